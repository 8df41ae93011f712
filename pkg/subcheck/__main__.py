"""Allow ``python -m subcheck``."""
from subcheck.main import run

if __name__ == "__main__":
    run()
