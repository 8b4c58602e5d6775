"""Surface syntax, SMT-LIB and TPTP output."""
