# src/surface/__init__.py
