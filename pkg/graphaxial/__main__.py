"""
Main entry point for running the package directly with 'python -m graphaxial'.
"""

from .cli import main

if __name__ == "__main__":
    main()
