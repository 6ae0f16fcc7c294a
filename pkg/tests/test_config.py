import io
import json
import logging

import numpy as np
import pytest

from lib import config
from lib.errors import InvalidTolerance
from lib.hyperplanes import section_kind
from lib.lines import is_fibre, line_from_unitary
from lib.numeric import Tolerance
from lib.projective import HyperplaneDual
from lib.quadrics import FamilyParams, classify_family
from lib.symmetries import classify_hyperplane
from lib.utils import format_elapsed, print_error, setup_logging


class TestBuildTolerance:
    def test_defaults(self, no_config):
        assert config.build_tolerance(environ={}, config_path=no_config) == Tolerance()

    def test_priority(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"eq_abs": 1e-5, "disc_zero": 1e-6, "containment": 1e-4}))
        from_file = config.build_tolerance(environ={}, config_path=str(path))
        assert from_file == Tolerance(1e-5, 1e-6, 1e-4)

        from_env = config.build_tolerance(environ={"Q22_TOL": "1e-7"}, config_path=str(path))
        assert from_env.eq_abs == 1e-7
        assert from_env.disc_zero == 1e-6

        explicit = config.build_tolerance(eq_abs=1e-3, containment=0.5, environ={"Q22_TOL": "1e-7"},
                                          config_path=str(path))
        assert explicit == Tolerance(1e-3, 1e-6, 0.5)

    def test_blank_env_is_ignored(self, no_config):
        assert config.build_tolerance(environ={"Q22_TOL": "  "}, config_path=no_config) == Tolerance()

    @pytest.mark.parametrize("raw", ["abc", "-1", "0", "nan", "inf"])
    def test_bad_env(self, raw, no_config):
        with pytest.raises(InvalidTolerance):
            config.build_tolerance(environ={"Q22_TOL": raw}, config_path=no_config)

    def test_bad_override(self, no_config):
        with pytest.raises(InvalidTolerance):
            config.build_tolerance(disc_zero=-1e-3, environ={}, config_path=no_config)


class TestConfigFile:
    def test_missing_file(self, no_config):
        assert config.load_config_file(no_config) == {}

    def test_invalid_json(self, tmp_path, caplog):
        path = tmp_path / "config.json"
        path.write_text("{not json")
        with caplog.at_level(logging.WARNING, logger="lib.config"):
            assert config.load_config_file(str(path)) == {}
        assert "Ignoring" in caplog.text

    def test_not_an_object(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[1, 2]")
        assert config.load_config_file(str(path)) == {}

    def test_unknown_keys_are_dropped(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"eq_abs": 1e-6, "theme": "dark"}))
        assert config.load_config_file(str(path)) == {"eq_abs": 1e-6}

    def test_save_and_load(self, tmp_path):
        path = tmp_path / "nested" / "config.json"
        tol = Tolerance(2e-9, 3e-8, 4e-8)
        assert config.save_config_file(tol, str(path))
        assert config.build_tolerance(environ={}, config_path=str(path)) == tol


class TestActiveTolerance:
    def test_resolve(self):
        custom = Tolerance(eq_abs=1e-4)
        assert config.resolve(custom) is custom
        assert config.resolve() == Tolerance()
        config.set_tolerance(custom)
        assert config.resolve() is custom
        assert config.get_tolerance() is custom

    def test_replace_ignores_none(self):
        tol = Tolerance()
        assert tol.replace(eq_abs=None, disc_zero=1e-3) == Tolerance(disc_zero=1e-3)


class TestConsole:
    @pytest.mark.parametrize("verbosity, level", [(0, logging.WARNING), (1, logging.INFO), (2, logging.DEBUG),
                                                  (5, logging.DEBUG)])
    def test_levels(self, verbosity, level):
        logger = setup_logging(verbosity, io.StringIO())
        assert logger.level == level
        assert len(logger.handlers) == 1

    def test_records_go_to_the_stream(self):
        stream = io.StringIO()
        setup_logging(1, stream)
        logging.getLogger("lib.continuation").info("tracked %d points", 3)
        assert "tracked 3 points" in stream.getvalue()
        assert "info" in stream.getvalue()

    def test_threshold_decisions_log_at_debug(self):
        stream = io.StringIO()
        setup_logging(2, stream)
        classify_family(FamilyParams(0, 1.00001))
        section_kind(HyperplaneDual([1, 0, -1, 0]))
        classify_hyperplane(HyperplaneDual([1, 0, -1, 0]))
        is_fibre(line_from_unitary(np.eye(2)))
        text = stream.getvalue()
        assert "lib.quadrics" in text and "disjoint" in text
        assert "lib.symmetries" in text and "tangent orbit" in text
        assert "lib.hyperplanes" in text and "fibre residual" in text
        assert "lib.lines" in text

    def test_print_error(self):
        stream = io.StringIO()
        print_error("NotDisjoint", "circle meets the unit circle", stream)
        assert "NotDisjoint" in stream.getvalue()
        assert "circle meets the unit circle" in stream.getvalue()

    def test_format_elapsed(self):
        assert "second" in format_elapsed(2.0)
        assert "millisecond" in format_elapsed(0.25)
