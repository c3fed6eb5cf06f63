import csv
import json
from fractions import Fraction
from typing import Any, Dict, List, TextIO

import numpy as np

DEFAULT_SIGNIFICANT_DIGITS = 12


def format_number(value:Any, digits:int=DEFAULT_SIGNIFICANT_DIGITS) -> str:
    """
    Locale-independent text form of a number with the given significant digits

    Fractions keep their exact p/q form; complex numbers print as re+imj.
    """
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if value is None:
        return "null"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if value.imag == 0:
            return format_number(value.real, digits)
        return f"{value.real:.{digits}g}{value.imag:+.{digits}g}j"
    if isinstance(value, (float, np.floating)):
        text = f"{float(value):.{digits}g}"
        return "0" if text == "-0" else text
    return str(value)


def rounded(value:Any, digits:int=DEFAULT_SIGNIFICANT_DIGITS) -> Any:
    """
    Copy of a JSON-able structure with every float cut to the given significant digits
    """
    if isinstance(value, dict):
        return {k: rounded(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [rounded(v, digits) for v in value]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.{digits}g}") + 0.0
    return value


def write_json(payload: Dict[str, Any], stream: TextIO, digits:int=DEFAULT_SIGNIFICANT_DIGITS):
    stream.write(json.dumps(rounded(payload, digits), indent=2) + "\n")


def write_text(payload: Dict[str, Any], stream: TextIO, digits:int=DEFAULT_SIGNIFICANT_DIGITS):
    """
    One "key: value" line per summary entry, then the table rows separated by spaces
    """
    for key, value in payload.get("summary", {}).items():
        stream.write(f"{key}: {_text_value(value, digits)}\n")
    table = payload.get("table")
    if table:
        stream.write(" ".join(table["columns"]) + "\n")
        for row in table["rows"]:
            stream.write(" ".join(format_number(v, digits) for v in row) + "\n")


def _text_value(value:Any, digits:int) -> str:
    if isinstance(value, dict):
        return ", ".join(f"{k}={_text_value(v, digits)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_text_value(v, digits) for v in value) + "]"
    return format_number(value, digits)


def write_csv(payload: Dict[str, Any], stream: TextIO, digits:int=DEFAULT_SIGNIFICANT_DIGITS):
    """
    The table with a header row; commands without a table print their summary as key,value rows
    """
    writer = csv.writer(stream, lineterminator="\n")
    table = payload.get("table")
    if table:
        writer.writerow(table["columns"])
        for row in table["rows"]:
            writer.writerow([format_number(v, digits) for v in row])
        return
    writer.writerow(["key", "value"])
    for key, value in payload.get("summary", {}).items():
        writer.writerow([key, _text_value(value, digits)])


WRITERS = {
    "text": write_text,
    "json": write_json,
    "csv": write_csv,
}


def write_output(payload: Dict[str, Any], output_format:str, stream: TextIO, digits:int=DEFAULT_SIGNIFICANT_DIGITS):
    WRITERS[output_format](payload, stream, digits)


def table(columns: List[str], rows: List[list]) -> Dict[str, Any]:
    return {"columns": columns, "rows": rows}
