from . import automata, distribution, figures, information, sample, simplex, transform

# registration order is the order shown by --help
REGISTRARS = (
    transform.register,
    simplex.register,
    sample.register,
    distribution.register,
    information.register,
    automata.register,
    figures.register,
)

__all__ = ["REGISTRARS"]
