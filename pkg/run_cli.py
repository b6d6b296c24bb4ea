"""
Easy CLI runner - Use this to run the pricing CLI
Usage: python run_cli.py price --example 1 --method ASGQ
"""
from src.cli.pricing_cli import main

if __name__ == "__main__":
    main()
