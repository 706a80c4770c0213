"""Library for the simplified suspension calculus and its neighbouring calculi."""
