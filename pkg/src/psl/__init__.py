"""p-adic symbol calculus for Galois symbol maps on elliptic curves over local fields."""
