"""DARBOUX HELIX data package, holds the built-in scenes."""
