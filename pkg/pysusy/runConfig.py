import json
import os
from .utility import *
color = "white"

ENV_GRID_DX = "SUSYQM_GRID_DX"
JSON_ROOT = "pysusy:run"

COMMANDS = ("partner", "variational", "shoot", "lpt", "scatter", "hydrogen",
            "heun", "superalgebra", "well", "levels", "wavefunctions")
FORMATS = ("csv", "json", "tsv")
SECTORS = ("minus", "plus", "both")
PROBLEMS = ("eps-x2", "quartic")
FAMILIES = ("odd-monomial", "sign-monomial", "even-monomial",
            "well-cotangent", "coulomb-radial")


class ConfigError(SusyError, ValueError):
    pass


def _defaults():
    return {
        "command": None,
        "sector": None,
        "problem": "eps-x2",
        "family": None,
        "m": 10,
        "sweep": None,
        "levels": 7,
        "order": 1,
        "delta": 1.0,
        "g": None,
        "n": 0,
        "E": None,
        "x-min": None,
        "x-max": None,
        "dx": 1e-3,
        "l": 0,
        "e2": 2.0,
        "L": 3.141592653589793,
        "a0": 1.0,
        "a1": 0.0,
        "j-max": 200,
        "n-max": 6,
        "tol": None,
        "format": "csv",
        "output": None,
        "compare-thesis": False,
        "coefficients": False,
        "degeneracy": False,
        "residual": False,
        "verbose": False,
    }


def parse_sweep(text):
    """ "1..10" -> [1, ..., 10]; "1,3,5" -> [1, 3, 5]. """
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError("bad sweep specification: %r" % text)


class RunConfig:
    """ Properties of one pysusy run.

    Values come, in increasing priority, from the built-in defaults, the
    environment (SUSYQM_GRID_DX for dx), a JSON file and explicit set()
    calls such as command-line flags.

    Attributes:
        properties (dict): Property name -> value.
    """
    def __init__(self, environ=None):
        self.properties = _defaults()
        environ = os.environ if environ is None else environ
        if environ.get(ENV_GRID_DX):
            try:
                self.properties["dx"] = float(environ[ENV_GRID_DX])
            except ValueError:
                raise ConfigError("%s is not a number: %r"
                                  % (ENV_GRID_DX, environ[ENV_GRID_DX]))
            print_time("Grid spacing %g taken from %s"
                       % (self.properties["dx"], ENV_GRID_DX), color)

    def __getitem__(self, prop):
        return self.properties[prop]

    def set(self, prop, value):
        """ Sets the property prop to value.

        Attributes:
            prop (string, required): Property to be set.
            value (required): New value; None leaves the property as is.
        """
        if prop not in self.properties:
            raise ConfigError("unknown property: " + str(prop))
        if value is None:
            return
        if prop == "sweep":
            value = parse_sweep(value)
        self.properties[prop] = value

    def default(self, prop):
        """ Sets the property prop back to its default value.

        Attributes:
            prop (string, required): Property to be set back to its default.
        """
        self.properties[prop] = _defaults().get(prop)

    def validate(self):
        p = self.properties
        if p["command"] not in COMMANDS:
            raise ConfigError("unknown command: %r" % p["command"])
        if p["format"] not in FORMATS:
            raise ConfigError("unknown output format: %r" % p["format"])
        if p["sector"] is not None and p["sector"] not in SECTORS:
            raise ConfigError("unknown sector: %r" % p["sector"])
        if p["problem"] not in PROBLEMS:
            raise ConfigError("unknown problem: %r" % p["problem"])
        if p["family"] is not None and p["family"] not in FAMILIES:
            raise ConfigError("unknown superpotential family: %r"
                              % p["family"])
        for prop in ("m", "levels", "j-max", "n-max"):
            if int(p[prop]) != p[prop] or p[prop] < 1:
                raise ConfigError("%s must be a positive integer" % prop)
        if int(p["order"]) != p["order"] or p["order"] < 0:
            raise ConfigError("order must be a non-negative integer")
        if not float(p["dx"]) > 0:
            raise ConfigError("dx must be positive")
        for m in p["sweep"] or ():
            if m < 1:
                raise ConfigError("sweep sizes must be positive")
        return self

    def as_dict(self):
        """ Properties in a stable order, for the JSON emitter. """
        return {k: self.properties[k] for k in sorted(self.properties)}

    @staticmethod
    def from_jsonfile(fname, environ=None, **overrides):
        """ Loads a run configuration from a JSON file.

        Attributes:
            fname (string, required): Path to a JSON document whose root
                object "pysusy:run" holds property names and values.
        """
        try:
            with open(fname) as infile:
                document = json.load(infile)
        except OSError as err:
            raise ConfigError("cannot read %s: %s" % (fname, err.strerror))
        except ValueError as err:
            raise ConfigError("%s is not valid JSON: %s" % (fname, err))
        if not isinstance(document, dict) or JSON_ROOT not in document:
            raise ConfigError("%s has no %r object" % (fname, JSON_ROOT))
        self = RunConfig(environ)
        for prop, value in document[JSON_ROOT].items():
            if prop not in self.properties:
                print_warning("ignoring unknown property %r in %s"
                              % (prop, fname))
                continue
            self.set(prop, value)
        for prop, value in overrides.items():
            self.set(prop.replace("_", "-"), value)
        return self
