"""g2kit: strict Lie 2-algebra actions on Lie algebroids, checked exactly,
and their desk-scale integrations to LA-group and 2-group actions."""

__version__ = "0.1.0"
