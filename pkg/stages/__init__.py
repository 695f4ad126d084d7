"""
Normalization cascade omega_0 -> omega_1 -> omega_2 -> omega_3 -> omega_4
and extraction of the invariants from the final structure equations.
"""
