# src/realize/__init__.py
