"""Discrete Morse theory, normalized Morse functions and collapsibility certificates."""
