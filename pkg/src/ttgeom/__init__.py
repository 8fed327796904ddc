"""Support computations for group algebras of finite abelian p-groups."""
__version__ = "0.1.0"
