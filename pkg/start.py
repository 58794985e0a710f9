import sys

from hochdesk.main import main

if __name__ == "__main__":
    # Local launcher: python start.py <command> [flags] <input.json>
    sys.exit(main())
