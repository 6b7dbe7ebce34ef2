import csv
import io
import json


def format_value(value, digits):
    text = format(float(value), f".{digits}g")
    return "0" if text == "-0" else text


def render_csv(header, rows, digits, comments=()):
    """
    CSV text with LF endings. The last column of every row is a float
    printed with `digits` significant digits; comments go last, `#`-prefixed.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        *coords, value = row
        writer.writerow([*(int(c) for c in coords), format_value(value, digits)])
    for comment in comments:
        buffer.write(f"# {comment}\n")
    return buffer.getvalue()


def render_jsonl(records):
    return "".join(json.dumps(record) + "\n" for record in records)


def emit(command, text, out=None):
    """Writes data to --out (UTF-8, LF) or to the command's stdout."""
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        command.stdout.write(text, ending="")
