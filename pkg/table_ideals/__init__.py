"""Table ideals toolkit.

Builds monomial ideals from tables, reduces tables to normal form,
recognizes table ideals from their generators, checks the strong
Lefschetz property, and produces labelled datasets for a decision-tree
classifier.

Entrypoint: ``python cli.py <command>`` (which calls :func:`main.main`).
"""
