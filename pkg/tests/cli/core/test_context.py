"""Tests for the run context."""

import numpy as np
import pytest

from gmtlab.reports import Table
from gmtlab.sets import InvalidSetError, PolyCurveSet, VoxelSet, generate, save_set


class TestContextCreate:
    """Tests for Context.create."""

    @pytest.mark.asyncio
    async def test_generator_source(self, make_context):
        """Test that a generator spec becomes the run set."""
        context = await make_context(source="halfspace:normal=0,1")

        assert isinstance(context.shape, PolyCurveSet)
        assert context.anisotropy.spec == "euclidean"
        assert context.config_hash == context.config.config_hash()

    @pytest.mark.asyncio
    async def test_file_source(self, make_context, temp_dir):
        """Test that an existing path is loaded as a set file."""
        path = temp_dir / "ball.vox"
        save_set(path, generate("ball:R=0.5;h=0.0625"))

        context = await make_context(source=str(path))

        assert isinstance(context.shape, VoxelSet)

    @pytest.mark.asyncio
    async def test_dimension_mismatch(self, make_context):
        """Test that the set dimension must match the config."""
        with pytest.raises(InvalidSetError, match="n=3"):
            await make_context(source="ball:R=0.5;n=3;h=0.125")


class TestContextHelpers:
    """Tests for the per-command helpers."""

    @pytest.mark.asyncio
    async def test_point_defaults_to_nearest_boundary_point(self, make_context):
        """Test that the origin is projected onto the boundary."""
        context = await make_context(source="ball:R=1")

        point = context.point()

        assert np.linalg.norm(point) == pytest.approx(1.0, abs=1e-5)

    @pytest.mark.asyncio
    async def test_point_snaps_configured_x(self, make_context):
        """Test that snap moves a configured x onto the boundary."""
        context = await make_context(source="halfspace:normal=0,1", x="0.5,0.3")

        np.testing.assert_allclose(context.point(), [0.5, 0.3])
        np.testing.assert_allclose(context.point(snap=True), [0.5, 0.0], atol=1e-9)

    @pytest.mark.asyncio
    async def test_radii(self, make_context):
        """Test the geometric radii and the configured override."""
        context = await make_context(source="ball:R=1", r0=0.5, theta=0.5, k_max=2)
        explicit = await make_context(source="ball:R=1", r0=0.5, radii="0.5,0.1")

        assert context.radii() == [0.5, 0.25, 0.125]
        assert explicit.radii() == [0.5, 0.1]

    @pytest.mark.asyncio
    async def test_points_use_configured_x(self, make_context):
        """Test that a configured x is the only sample point."""
        context = await make_context(source="ball:R=1", x="1,0")

        np.testing.assert_allclose(context.points(), [[1.0, 0.0]])

    @pytest.mark.asyncio
    async def test_voxels_are_cached(self, make_context):
        """Test that a polygon is rasterized once at the configured h."""
        context = await make_context(source="ball:R=0.5", h=0.0625)

        first = context.voxels()

        assert first is context.voxels()
        assert first.h == 0.0625

    @pytest.mark.asyncio
    async def test_map_keeps_order(self, make_context):
        """Test that threaded mapping returns results in input order."""
        context = await make_context(source="ball:R=1", threads=2)

        result = await context.map(lambda v: v * v, [1, 2, 3, 4])

        assert result == [1, 4, 9, 16]

    @pytest.mark.asyncio
    async def test_write_table_records_path(self, make_context, temp_dir):
        """Test that written files are tracked and carry the config hash."""
        context = await make_context(source="ball:R=1")
        table = Table(["a"])
        table.add(1)

        path = await context.write_table("t.csv", table)

        assert context.written == [temp_dir / "t.csv"]
        assert f"# config_hash={context.config_hash}" in path.read_text()
