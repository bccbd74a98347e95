"""socpilot: LLM-driven silicon participants for piloting social experiments."""

__version__ = "0.1.0"
