"""Ordinal analysis workbench for Kripke-Platek set theory with a Pi-1-1 comprehension scheme."""
