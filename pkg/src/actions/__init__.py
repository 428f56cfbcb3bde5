"""Circle actions of Z2 * Z3, their lifts and rotation triples."""
