#!/usr/bin/env python3
"""
Tolerance configuration for HyperQ.

The active tolerance is assembled from, in increasing priority: the
built-in defaults, the optional JSON file ~/.hyperq/config.json, the
Q22_TOL environment variable (eq_abs only) and explicit command-line
overrides.
"""
import json
import logging
import os

from .errors import InvalidTolerance
from .numeric import Tolerance

CONFIG_DIR = os.path.expanduser('~/.hyperq')
CONFIG_FILE = os.path.join(CONFIG_DIR, 'config.json')
TOL_ENV_VAR = 'Q22_TOL'

_logger = logging.getLogger(__name__)

# Module-level active tolerance. Only the command line replaces it, once, before dispatch.
_active_tolerance = Tolerance()


def get_tolerance():
    return _active_tolerance


def set_tolerance(tol):
    global _active_tolerance
    _active_tolerance = tol


def resolve(tol=None):
    """Return tol, or the active tolerance when tol is None."""
    return _active_tolerance if tol is None else tol


def load_config_file(path=CONFIG_FILE):
    """Read tolerance fields from the JSON config file; missing or unreadable files give {}."""
    try:
        if os.path.exists(path):
            with open(path, 'r') as f:
                data = json.load(f)
            if isinstance(data, dict):
                return {k: data[k] for k in ('eq_abs', 'disc_zero', 'containment') if k in data}
            _logger.warning("Ignoring %s: expected a JSON object", path)
    except (json.JSONDecodeError, IOError) as e:
        _logger.warning("Ignoring %s: %s", path, e)
    return {}


def save_config_file(tol, path=CONFIG_FILE):
    """Persist a tolerance to the config file."""
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, 'w') as f:
            json.dump({'eq_abs': tol.eq_abs, 'disc_zero': tol.disc_zero,
                       'containment': tol.containment}, f, indent=2)
        return True
    except IOError:
        return False


def env_eq_abs(environ=None):
    environ = os.environ if environ is None else environ
    raw = environ.get(TOL_ENV_VAR)
    if raw is None or raw.strip() == '':
        return None
    try:
        return float(raw)
    except ValueError:
        raise InvalidTolerance(f"{TOL_ENV_VAR}={raw!r} is not a number")


def build_tolerance(eq_abs=None, disc_zero=None, containment=None, environ=None, config_path=CONFIG_FILE):
    """Assemble the tolerance from defaults, config file, environment and overrides."""
    tol = Tolerance().replace(**load_config_file(config_path))
    tol = tol.replace(eq_abs=env_eq_abs(environ))
    tol = tol.replace(eq_abs=eq_abs, disc_zero=disc_zero, containment=containment)
    _logger.debug("Active tolerance: %s", tol)
    return tol
