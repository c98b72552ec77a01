# Tests package for the interference solvers
