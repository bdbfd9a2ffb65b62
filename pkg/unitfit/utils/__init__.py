"""Small helpers: token parsing, family tokens, number formatting and settings."""
