# coding: utf-8
from .cli.cli import main

main()
