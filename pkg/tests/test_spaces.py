import pytest

from ahom.abelian import FgAbGroup
from ahom.chains import homology, suspension, wedge
from ahom.spaces import (
    RecipeError,
    SpaceRecipe,
    build,
    is_suspension_shaped,
    moore,
    parse_recipe,
    projective,
    s_zero,
    sphere,
)

Z = FgAbGroup.free(1)
Z2 = FgAbGroup.cyclic(2)


class TestRecipes:
    def test_parse_sphere(self):
        assert parse_recipe("sphere:4") == SpaceRecipe.sphere(4)

    def test_parse_projective(self):
        assert parse_recipe("rp:2") == SpaceRecipe.projective(2)

    def test_parse_moore(self):
        r = parse_recipe("moore:Z/2+Z/4:3")
        assert r == SpaceRecipe.moore(FgAbGroup.of(0, [2, 4]), 3)

    def test_parse_file(self):
        assert parse_recipe("file:/tmp/x.json") == SpaceRecipe.file("/tmp/x.json")

    @pytest.mark.parametrize("bad", [
        "sphere", "sphere:x", "sphere:0", "rp:-1", "moore:Z/2", "moore:Q:1",
        "moore:Z/2:0", "torus:2", "file:", ""])
    def test_parse_rejects(self, bad):
        with pytest.raises(RecipeError):
            parse_recipe(bad)


class TestBuild:
    def test_sphere(self):
        c = build(SpaceRecipe.sphere(4))
        for n in range(7):
            assert homology(c, n) == (Z if n == 4 else FgAbGroup.trivial())

    def test_moore_z2_matches_projective_plane(self):
        m = build(SpaceRecipe.moore(Z2, 1))
        p = build(SpaceRecipe.projective(2))
        for n in range(4):
            assert homology(m, n) == homology(p, n)

    def test_projective_three(self):
        c = build(SpaceRecipe.projective(3))
        assert homology(c, 1) == Z2
        assert homology(c, 2) == FgAbGroup.trivial()
        assert homology(c, 3) == Z

    def test_build_from_file(self, tmp_path):
        import json

        from ahom.chains import complex_to_json
        c = projective(2)
        path = tmp_path / "p2.json"
        path.write_text(json.dumps(complex_to_json(c)))
        assert build(SpaceRecipe.file(str(path))) == c

    def test_deterministic(self):
        r = SpaceRecipe.moore(FgAbGroup.of(1, [2, 6]), 2)
        assert build(r) == build(r)

    def test_moore_of_trivial_group(self):
        c = moore(FgAbGroup.trivial(), 2)
        assert c.ranks == {}

    def test_s_zero(self):
        c = s_zero()
        assert c.rank(0) == 1
        assert homology(c, 0) == Z


class TestSuspensionShape:
    def test_suspended_projective_plane(self):
        assert is_suspension_shaped(suspension(projective(2)))

    def test_projective_plane_is_not(self):
        assert not is_suspension_shaped(projective(2))

    def test_circle_is_not(self):
        assert not is_suspension_shaped(sphere(1))

    def test_high_spheres_are(self):
        assert is_suspension_shaped(sphere(2))
        assert is_suspension_shaped(wedge([sphere(2), sphere(5)]))
