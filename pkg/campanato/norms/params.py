"""Index pairs (p, eta) and seminorm reports."""

import numpy as np

# Flags a report row may carry.
FLAGS = ("BOUNDED", "DIVERGENT", "DEGENERATE", "SINGULAR", "SKIPPED-MASS")


class IndexParams:
    """The exponent pair of the Campanato space AL_{p, eta}.

    Parameters
    ----------
    p : float
        Integrability exponent, p >= 1.
    eta : float
        Scaling exponent, eta >= 0.

    Raises
    ------
    ValueError
        If p < 1 or eta < 0.
    """

    def __init__(self, p, eta):
        self.p = float(p)
        self.eta = float(eta)

        # Error check
        if not self.p >= 1:
            raise ValueError("p must be at least 1, got {}.".format(p))
        if not self.eta >= 0:
            raise ValueError("eta must be nonnegative, got {}.".format(eta))

    def __repr__(self):
        return "IndexParams(p={:g}, eta={:g})".format(self.p, self.eta)

    def __eq__(self, other):
        return isinstance(other, IndexParams) and (self.p, self.eta) == (other.p, other.eta)

    def __hash__(self):
        return hash((self.p, self.eta))

    @property
    def alpha(self):
        """Bloch order (p + 1 - eta) / p of the optimal inclusion."""
        return (self.p + 1 - self.eta) / self.p

    @property
    def regime(self):
        """One of 'hardy', 'morrey', 'bmoa', 'lipschitz' or 'constants'."""
        if self.eta == 0:
            return "hardy"
        if self.eta < 1:
            return "morrey"
        if self.eta == 1:
            return "bmoa"
        if self.eta <= 1 + self.p:
            return "lipschitz"
        return "constants"

    @property
    def lipschitz_exponent(self):
        """(eta - 1) / p in the Lipschitz regime, None elsewhere."""
        if self.regime != "lipschitz":
            return None
        return (self.eta - 1) / self.p

    @property
    def space_name(self):
        regime = self.regime
        if regime == "hardy":
            return "H^{:g}".format(self.p)
        if regime == "morrey":
            return "analytic Morrey space AL^{{{:g},{:g}}}".format(self.p, self.eta)
        if regime == "bmoa":
            return "BMOA"
        if regime == "lipschitz":
            return "analytic Lipschitz space Lip_{:g}".format(self.lipschitz_exponent)
        return "constants"

    @property
    def in_mobius_regime(self):
        """Whether 0 < eta < 2 <= 1 + p, where the Möbius characterization holds."""
        return 0 < self.eta < 2 <= 1 + self.p

    def embeds_into(self, other):
        """Whether AL_{p, eta} is contained in AL_{q, lambda}.

        The inclusion holds when p >= q and (eta - 1) / p >= (lambda - 1) / q.
        """
        return self.p >= other.p and (self.eta - 1) / self.p >= (other.eta - 1) / other.p

    def to_dict(self):
        return {"p": self.p, "eta": self.eta}

    @classmethod
    def from_dict(cls, data):
        return cls(data["p"], data["eta"])


class SeminormReport:
    """Value of a discrete supremum with the point or arc attaining it.

    Parameters
    ----------
    value : float
        The supremum, nonnegative.
    witness : object
        Arc, point or other member of the searched family attaining it.
    resolution : dict, optional
        Grid metadata.
    flags : iterable of str, optional
        Flags from ``FLAGS``.
    levels : dict, optional
        Per-level suprema, keyed by arc length or radius.
    notes : list of str, optional
        Free-form caveats such as a parameter regime outside a theorem.
    """

    def __init__(self, value, witness, resolution=None, flags=(), levels=None, notes=None):
        value = float(value)
        if not value >= 0 and not np.isnan(value):
            raise ValueError("Seminorm values are nonnegative, got {}.".format(value))
        unknown = set(flags) - set(FLAGS)
        if unknown:
            raise ValueError("Unknown report flags: {}.".format(sorted(unknown)))
        self.value = value
        self.witness = witness
        self.resolution = dict(resolution or {})
        self.flags = tuple(sorted(set(flags)))
        self.levels = dict(levels or {})
        self.notes = list(notes or [])

    def __repr__(self):
        return "SeminormReport(value={:.6g}, witness={!r}, flags={})".format(
            self.value, self.witness, list(self.flags)
        )

    def __float__(self):
        return self.value

    def to_dict(self):
        witness = self.witness
        if hasattr(witness, "to_dict"):
            witness = witness.to_dict()
        elif isinstance(witness, (complex, np.complexfloating)):
            witness = [float(np.real(witness)), float(np.imag(witness))]
        return {
            "value": self.value,
            "witness": witness,
            "resolution": self.resolution,
            "flags": list(self.flags),
            "levels": {repr(k): v for k, v in self.levels.items()},
            "notes": list(self.notes),
        }
