"""K-factor Scattering Lab - Rician K-factor of random scatterer clouds vs frequency."""

__version__ = "0.1.0"
