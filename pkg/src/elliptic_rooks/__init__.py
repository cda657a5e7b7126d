"""Elliptic rook theory toolkit (placeholder init, finalized later)."""
