"""Word algebra of the free product Z2 * Z3 = <alpha, beta | alpha^2 = beta^3 = 1>."""
