import datetime
import sys
from enum import Enum
from termcolor import colored

_verbose = False


class SusyError(Exception):
    """ Base class of every error raised by pysusy. """
    pass


class Sector(Enum):
    MINUS = -1
    PLUS = 1

    @property
    def sign(self):
        return self.value

    @staticmethod
    def parse(name):
        """ Maps "minus"/"plus" (or "-"/"+") to a Sector. """
        key = str(name).strip().lower()
        if key in ("minus", "-", "m"):
            return Sector.MINUS
        if key in ("plus", "+", "p"):
            return Sector.PLUS
        raise ValueError("unknown sector: " + str(name))


class Parity(Enum):
    EVEN = 0
    ODD = 1

    @staticmethod
    def of_level(n):
        return Parity.EVEN if n % 2 == 0 else Parity.ODD


def set_verbose(flag=True):
    global _verbose
    _verbose = bool(flag)


def is_verbose():
    return _verbose


def print_time(msg="", color="red"):
    if not _verbose:
        return
    print(colored(str(datetime.datetime.now())+": "+msg, color),
          file=sys.stderr)


def print_warning(msg=""):
    print(colored(str(datetime.datetime.now())+": warning: "+msg, "yellow"),
          file=sys.stderr)


def print_error(msg=""):
    print(colored("error: "+msg, "red"), file=sys.stderr)
