from wellscoped.cli import entry

entry()
