# Makes 'api' a Python package
