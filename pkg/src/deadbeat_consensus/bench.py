"""Experiment drivers (under construction)."""
