"""Library tests for equidist."""
