"""Edgewise jump invariants and computational atlas for the partition graph."""
