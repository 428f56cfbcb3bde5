"""Run defaults, overridable through environment variables."""

import os

# Word bound for certificates and theta tables
MAX_SYLLABLES = int(os.getenv("ROTKIT_MAX_SYLLABLES", "8"))

# Markov window L, intervals are built for |l| <= L
WINDOW = int(os.getenv("ROTKIT_WINDOW", "10"))

# Largest period searched by the periodic point detection
Q_MAX = int(os.getenv("ROTKIT_Q_MAX", "30"))

# Iterations used for translation number enclosures
ITERS = int(os.getenv("ROTKIT_ITERS", "10000"))

# Residual accepted for relations and inclusions on the floating (Möbius) backend
RELATION_THRESHOLD = float(os.getenv("ROTKIT_RELATION_THRESHOLD", "1e-9"))

# Residual accepted for the equivariant period-5 map
THETA_THRESHOLD = float(os.getenv("ROTKIT_THETA_THRESHOLD", "1e-6"))

# Dense sampling used for "for all x" checks on floating lifts
SAMPLES = int(os.getenv("ROTKIT_SAMPLES", "10000"))

# Largest admissible gap between orbit points of a theta table
MAX_GAP = float(os.getenv("ROTKIT_MAX_GAP", "0.05"))

# Backend used for built-in actions ("pl" is exact, "mobius" is floating)
BACKEND = os.getenv("ROTKIT_BACKEND", "pl").lower()

# Smallest share of table points on which the theta residuals must be measured
THETA_MIN_COVERAGE = float(os.getenv("ROTKIT_THETA_MIN_COVERAGE", "0.1"))
