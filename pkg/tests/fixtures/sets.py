"""Generated sets used across modules."""

import numpy as np
import pytest

from gmtlab.sets import VoxelSet, generate


@pytest.fixture
def circle():
    """Unit circle as a 2048-gon; (1, 0) is a vertex."""
    return generate("ball:R=1")


@pytest.fixture
def halfspace():
    """Lower half-plane {y <= 0} inside the box [-2, 2]^2."""
    return generate("halfspace:normal=0,1")


@pytest.fixture
def cross():
    """Plus shape with reflex corners at (+-0.2, +-0.2)."""
    return generate("cross:w=0.4;L=1")


@pytest.fixture
def make_slope():
    """Subgraph of y = s t."""

    def _make(s: float):
        return generate(f"graph:f=linear;s={s}")

    return _make


@pytest.fixture
def voxel_halfspace():
    """Lower half-plane rasterized at h = 1/32 on [-1, 1]^2."""
    h = 1 / 32
    dims = (64, 64)
    centers_y = -1 + (np.arange(dims[1]) + 0.5) * h
    cells = np.zeros(dims, dtype=bool)
    cells[1:-1, :] = centers_y[None, :] <= 0
    cells[:, 0] = False
    return VoxelSet(cells=cells, origin=np.array([-1.0, -1.0]), spacing=h, smoothing=2.0)


@pytest.fixture
def voxel_ball():
    """Ball of radius 0.5 at h = 1/32."""
    return generate("ball:R=0.5;h=0.03125")


@pytest.fixture
def voxel_speck(voxel_halfspace):
    """voxel_halfspace plus one isolated cell centred near (0.016, 0.141)."""
    cells = voxel_halfspace.cells.copy()
    cells[32, 36] = True
    return voxel_halfspace.with_cells(cells)
