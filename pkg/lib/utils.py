#!/usr/bin/env python3
"""
Console helpers for HyperQ: colored logging, status messages and a spinner
for long computations. Everything here writes to stderr so that stdout only
carries command results.
"""
import itertools
import logging
import sys
import threading
import time

import humanize
from colorama import Fore, Style, init

init()

LEVEL_COLORS = {
    logging.DEBUG: Fore.WHITE,
    logging.INFO: Fore.CYAN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}

# Spinner state, shared with the spinner thread
spinner_running = False
spinner_thread = None

SPINNER_MESSAGES = [
    (0, "Tracking section branches..."),
    (5, "Still following roots around the sphere..."),
    (15, "Checking loops for monodromy..."),
]


class ColorFormatter(logging.Formatter):
    """Prefix each record with a colored level name."""

    def format(self, record):
        color = LEVEL_COLORS.get(record.levelno, "")
        message = super().format(record)
        return f"{color}{record.levelname.lower()}{Style.RESET_ALL}: {message}"


def setup_logging(verbosity=0, stream=None):
    """Attach a colored stderr handler to the package logger; -v gives INFO, -vv DEBUG."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logger = logging.getLogger("lib")
    logger.handlers.clear()
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(ColorFormatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger


def print_error(name, message, stream=None):
    stream = stream or sys.stderr
    stream.write(f"{Fore.RED}{Style.BRIGHT}{name}{Style.RESET_ALL}{Fore.RED}: {message}{Style.RESET_ALL}\n")


def print_success(message, stream=None):
    stream = stream or sys.stderr
    stream.write(f"{Fore.GREEN}✓ {message}{Style.RESET_ALL}\n")


def start_spinner(message):
    """Start a spinner on stderr (only when stderr is a terminal)."""
    global spinner_running, spinner_thread
    if not sys.stderr.isatty():
        return None
    spinner_running = True
    spinner_thread = threading.Thread(target=_show_spinner, args=(message,))
    spinner_thread.daemon = True
    spinner_thread.start()
    return spinner_thread


def stop_spinner():
    global spinner_running, spinner_thread
    if spinner_running:
        spinner_running = False
        if spinner_thread and spinner_thread.is_alive():
            spinner_thread.join(timeout=1.0)
    spinner_thread = None


def _show_spinner(message):
    spinner_chars = itertools.cycle(['⣾', '⣽', '⣻', '⢿', '⡿', '⣟', '⣯', '⣷'])
    start_time = time.time()

    while spinner_running:
        elapsed = time.time() - start_time
        current_message = message
        for threshold, msg in SPINNER_MESSAGES:
            if elapsed >= threshold:
                current_message = msg
        time_display = f" {Fore.WHITE}{int(elapsed)}s{Style.RESET_ALL}" if elapsed > 3 else ""
        sys.stderr.write('\r' + ' ' * 80)
        sys.stderr.write(f"\r{Fore.CYAN}{current_message}{Style.RESET_ALL}{time_display} "
                         f"{Fore.YELLOW}{next(spinner_chars)}{Style.RESET_ALL}")
        sys.stderr.flush()
        time.sleep(0.1)

    elapsed = time.time() - start_time
    sys.stderr.write('\r' + ' ' * 80 + '\r')
    print_success(f"{message} done in {format_elapsed(elapsed)}")


def format_elapsed(seconds):
    return humanize.precisedelta(seconds, minimum_unit="milliseconds", format="%0.0f")
