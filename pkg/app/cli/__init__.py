"""Command-line front end: JSON documents, fixtures and command implementations."""
