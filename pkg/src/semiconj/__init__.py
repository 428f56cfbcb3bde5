"""Semi-conjugacy certificates for the two Fuchsian classes of Z2 * Z3 actions."""
