"""Top-level package for horocone: translated horospherical measures and their counting laws."""
