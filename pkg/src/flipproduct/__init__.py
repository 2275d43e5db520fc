"""Flip products of matroids and the invariants built from them."""
