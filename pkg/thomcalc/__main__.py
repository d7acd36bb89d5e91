"""Entry point for the thomcalc package."""
from .cli.main import run, main

if __name__ == '__main__':
    run()
