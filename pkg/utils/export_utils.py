import os
import sys

import pandas as pd

from modules.galois_field import FieldElement, format_element
from modules.grassmannian import enumerate_grassmannian, plucker_coords, stratum
from modules.matrix_ops import Matrix

REPORT_COLUMNS = ['check-id', 'params', 'predicted', 'observed', 'status']
FORMATS = ('text', 'csv', 'json')


def _fmt(spec, x):
    return format_element(FieldElement(spec, int(x)))


def genmat_frame(code):
    """Generator matrix as a DataFrame, one column per code coordinate."""
    columns = [f"P{j}" for j in range(code.n)]
    data = [[_fmt(code.spec, x) for x in row] for row in code.genmat]
    return pd.DataFrame(data, columns=columns)


def genmat_preamble(code):
    l, m, q = code.params if code.params else ('', '', code.q)
    return f"# family={code.family},l={l},m={m},q={q}"


def weights_frame(distribution):
    items = sorted(distribution.items())
    return pd.DataFrame({'weight': [w for w, _ in items], 'count': [c for _, c in items]})


def geometry_frame(l, m, spec):
    """Every point of G(l, m): RREF basis, normalized Plücker coordinates and stratum."""
    records = [{
        'point': Matrix(spec, g.basis).to_text(),
        'plucker': ' '.join(_fmt(spec, x) for x in plucker_coords(g)),
        'stratum': stratum(g, l, m),
    } for g in enumerate_grassmannian(l, m, spec)]
    return pd.DataFrame(records, columns=['point', 'plucker', 'stratum'])


def report_frame(rows):
    return pd.DataFrame([r.as_dict() for r in rows], columns=REPORT_COLUMNS)


def report_csv(rows):
    """Report lines exactly as check-id,params,predicted,observed,status (params keep their commas)."""
    return '\n'.join([','.join(REPORT_COLUMNS)] + [r.to_csv_line() for r in rows]) + '\n'


def render(df, fmt, preamble=None):
    if fmt not in FORMATS:
        raise ValueError(f"unknown output format {fmt!r}; expected one of {FORMATS}")
    if fmt == 'csv':
        body = df.to_csv(index=False, lineterminator='\n')
    elif fmt == 'json':
        body = df.to_json(orient='records') + '\n'
    else:
        body = df.to_string(index=False) + '\n'
    if preamble and fmt != 'json':
        body = preamble + '\n' + body
    return body


def write_output(text, out=None):
    """Write to ``out`` (directories created) or stdout. Returns the path written, if any."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return None
    out_dir = os.path.dirname(out)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    with open(out, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    return out
