import sys

from table_ideals.main import main


if __name__ == "__main__":
    sys.exit(main())
