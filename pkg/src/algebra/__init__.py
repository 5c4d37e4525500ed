# src/algebra/__init__.py
