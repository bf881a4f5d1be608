import numpy as np
import pytest

from qps import states


@pytest.fixture
def t_state():
    """The qubit T-state T H |0>, the standard single-qubit magic state."""
    return states.pure_state(np.array([1.0, np.exp(1j * np.pi / 4)]) / np.sqrt(2), 2)


@pytest.fixture
def qutrit_magic():
    """A qutrit state with a strictly negative Wigner entry."""
    v = np.array([1.0, 1.0, np.exp(2j * np.pi / 9)]) / np.sqrt(3)
    return states.pure_state(v, 3)
