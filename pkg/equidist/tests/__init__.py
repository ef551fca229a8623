"""HTTP API test package."""
