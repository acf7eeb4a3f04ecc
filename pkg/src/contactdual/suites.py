"""Property suite bodies.  Filled in alongside the modules they verify."""
