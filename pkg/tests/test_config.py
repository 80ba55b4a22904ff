"""
Tests for runtime settings.
"""

import pytest

from pybhw.config import SEED_ENV_VAR, Settings


class TestSettings:
    """Tests for Settings.from_env."""

    def test_defaults(self):
        """Without overrides or environment the defaults apply."""
        settings = Settings.from_env({})
        assert settings == Settings()
        assert (settings.seed, settings.depth, settings.sigma) == (0, 4, "0")
        assert (settings.exact_rank, settings.tower_max) == (4, 64)

    def test_overrides(self):
        """Keyword overrides replace single fields."""
        settings = Settings.from_env({}, depth=2, witness_max=3)
        assert (settings.depth, settings.witness_max) == (2, 3)
        assert settings.samples == Settings.samples

    def test_none_ignored(self):
        """Unset command line options do not clear defaults."""
        assert Settings.from_env({}, seed=None, samples=None) == Settings()

    def test_seed_from_environment(self):
        """BHW_SEED beats an explicit seed."""
        assert Settings.from_env({SEED_ENV_VAR: "17"}, seed=3).seed == 17

    def test_blank_seed(self):
        """A blank variable is ignored."""
        assert Settings.from_env({SEED_ENV_VAR: " "}, seed=3).seed == 3

    def test_process_environment(self, monkeypatch):
        """The process environment is read by default."""
        monkeypatch.setenv(SEED_ENV_VAR, "5")
        assert Settings.from_env().seed == 5

    def test_bad_seed(self):
        """The seed must be an integer."""
        with pytest.raises(ValueError, match=SEED_ENV_VAR):
            Settings.from_env({SEED_ENV_VAR: "seven"})
