# core/__init__.py
# This file marks 'core' as a Python package
