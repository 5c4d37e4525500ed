# src/cover/__init__.py
