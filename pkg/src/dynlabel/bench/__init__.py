"""Instance generation, traces, replay harness and command line."""
