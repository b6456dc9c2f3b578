"""Run the penults command line from a checkout: python main.py <command> [flags]."""
from penults.cli import main

if __name__ == "__main__":
    main()
