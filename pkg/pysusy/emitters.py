import csv
import json
import math
from .utility import *
color = "blue"

FLOAT_FORMAT = "%.6f"


class EmitError(SusyError):
    pass


class Table():
    """ Rows produced by one command.

    Attributes:
        command (string): Name of the command that produced the rows.
        header (list): Column names.
        rows (list): Tuples, one entry per column.
        notes (list): Side-channel lines, e.g. delta spikes of a partner
            potential, that do not fit the columns.
        config (dict): Effective run configuration.
    """
    def __init__(self, command, header, rows=None, notes=None, config=None):
        self.command = command
        self.header = list(header)
        self.rows = []
        self.notes = list(notes or [])
        self.config = dict(config or {})
        for row in rows or []:
            self.append(row)

    def append(self, row):
        row = tuple(row)
        if len(row) != len(self.header):
            raise EmitError("row has %d entries, header has %d"
                            % (len(row), len(self.header)))
        self.rows.append(row)

    def column(self, name):
        i = self.header.index(name)
        return [row[i] for row in self.rows]


def format_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if not math.isfinite(value):
            return str(value)
        return FLOAT_FORMAT % value
    if hasattr(value, "dtype"):
        return format_cell(value.item())
    return str(value)


def _json_cell(value):
    if hasattr(value, "dtype"):
        value = value.item()
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(FLOAT_FORMAT % value)
    return value


class Emitter():
    """ Writes a Table to a text stream. Subclasses fill in write(). """
    name = None

    def write(self, table, stream):
        pass


class DelimitedEmitter(Emitter):
    """ Header line, one line per row, LF line endings. Notes go first as
        "# " comment lines.
    """
    delimiter = ","

    def write(self, table, stream):
        for note in table.notes:
            stream.write("# " + note + "\n")
        writer = csv.writer(stream, delimiter=self.delimiter,
                            lineterminator="\n")
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow([format_cell(v) for v in row])
        print_time("Wrote %d %s rows for %s"
                   % (len(table.rows), self.name, table.command), color)


class CsvEmitter(DelimitedEmitter):
    name = "csv"
    delimiter = ","


class TsvEmitter(DelimitedEmitter):
    name = "tsv"
    delimiter = "\t"


class JsonEmitter(Emitter):
    """ {"command": ..., "config": {...}, "rows": [{column: value}]} """
    name = "json"

    def write(self, table, stream):
        document = {
            "command": table.command,
            "config": {k: table.config[k] for k in sorted(table.config)},
            "rows": [{h: _json_cell(v) for h, v in zip(table.header, row)}
                     for row in table.rows],
        }
        if table.notes:
            document["notes"] = table.notes
        json.dump(document, stream, indent=2)
        stream.write("\n")
        print_time("Wrote %d json rows for %s"
                   % (len(table.rows), table.command), color)


EMITTERS = {e.name: e for e in (CsvEmitter, TsvEmitter, JsonEmitter)}


def emitter_for(fmt):
    try:
        return EMITTERS[fmt]()
    except KeyError:
        raise EmitError("unknown output format: %r" % fmt)


def emit(table, fmt, stream):
    emitter_for(fmt).write(table, stream)
