"""Presets, configuration, experiment runner and command-line interface."""
