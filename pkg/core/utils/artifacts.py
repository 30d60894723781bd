"""Atomic writers for the JSON, CSV and SVG artifacts of a run."""
import csv
import io
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

from .digest import canonical_json

logger = logging.getLogger(__name__)

# Fixed salt and no date metadata keep SVG output byte-stable
SVG_HASH_SALT = 'hullcert'


def provenance(command: str, mode, seed: int, tolerance: float, inputs: Dict[str, str]) -> Dict[str, object]:
    return {
        'command': command,
        'mode': getattr(mode, 'value', mode),
        'seed': seed,
        'tolerance': tolerance,
        'inputs': dict(sorted(inputs.items())),
    }


def atomic_write(path, data: bytes) -> Path:
    """Write ``data`` to a temporary file next to ``path`` and rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, temp = tempfile.mkstemp(dir=path.parent, prefix=f'.{path.name}.', suffix='.tmp')
    try:
        with os.fdopen(fd, 'wb') as handle:
            handle.write(data)
        os.replace(temp, path)
    except BaseException:
        if os.path.exists(temp):
            os.unlink(temp)
        raise
    logger.debug('Wrote %s (%d bytes)', path, len(data))
    return path


def write_json(path, payload: Dict[str, object], meta: Dict[str, object]) -> Path:
    document = dict(payload)
    document['provenance'] = meta
    text = json.dumps(document, sort_keys=True, indent=2, ensure_ascii=True) + '\n'
    return atomic_write(path, text.encode('utf-8'))


def write_csv(path, columns: Sequence[str], rows: Iterable[Dict[str, object]], meta: Dict[str, object]) -> Path:
    buffer = io.StringIO()
    buffer.write(f'# {canonical_json(meta)}\n')
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction='ignore', lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _csv_value(row.get(key)) for key in columns})
    return atomic_write(path, buffer.getvalue().encode('utf-8'))


def _csv_value(value):
    if isinstance(value, float):
        return repr(value)
    return value


def write_svg(path, polylines: List[Tuple[str, Sequence[Tuple[float, float]], bool]], meta: Dict[str, object],
              caption: str = 'projection to the first complex coordinate', points: Optional[Dict] = None) -> Path:
    """Plot labelled planar polylines (label, xy points, closed) with the provenance as the SVG title."""
    plt.rcParams['svg.hashsalt'] = SVG_HASH_SALT
    figure, axes = plt.subplots(figsize=(6, 6))
    try:
        for label, xy, closed in polylines:
            xs = [p[0] for p in xy] + ([xy[0][0]] if closed and xy else [])
            ys = [p[1] for p in xy] + ([xy[0][1]] if closed and xy else [])
            axes.plot(xs, ys, linewidth=0.8, label=label)
        for label, xy in (points or {}).items():
            axes.scatter([p[0] for p in xy], [p[1] for p in xy], s=4, label=label)
        axes.set_aspect('equal', adjustable='datalim')
        axes.set_xlabel('Re z1')
        axes.set_ylabel('Im z1')
        axes.set_title(caption, fontsize=9)
        axes.legend(loc='upper right', fontsize=7, title=caption, title_fontsize=7)
        buffer = io.BytesIO()
        figure.savefig(buffer, format='svg', metadata={'Date': None, 'Title': canonical_json(meta)})
    finally:
        plt.close(figure)
    return atomic_write(path, buffer.getvalue())


def first_coordinate(points: Iterable[Sequence]) -> List[Tuple[float, float]]:
    """Projection of C^n points (real pairs) onto the first complex coordinate."""
    return [(float(p[0]), float(p[1])) for p in points]
