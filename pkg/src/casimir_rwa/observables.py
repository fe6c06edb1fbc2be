"""Photon statistics and state comparison."""

from dataclasses import dataclass

import numpy as np

from . import fock


@dataclass(frozen=True)
class PhotonDistribution:
    probs: np.ndarray

    @property
    def dim(self):
        return self.probs.shape[0]

    @property
    def total(self):
        return float(self.probs.sum())


def photon_distribution(psi):
    psi = fock.as_state(psi)
    return PhotonDistribution((psi.conj() * psi).real)


def mean_photon_number(psi, renormalize=True):
    """<N>; by default divided by the retained probability so leakage does not bias it."""
    probs = photon_distribution(psi).probs
    raw = float(np.dot(np.arange(probs.shape[0]), probs))
    if not renormalize:
        return raw
    return raw / float(probs.sum())


def infidelity(psi, phi):
    return 1.0 - fock.fidelity(psi, phi)
