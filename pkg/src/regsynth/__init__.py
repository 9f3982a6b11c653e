"""Learning-based synthesis for regular safety games."""
