# core/tasks/demo_tables.py
import logging

from celery import shared_task

from core.constants import DEMO_SAMPLES, DEMO_VERTICES, Mode
from core.exceptions import HullcertError
from core.geometry import hull_lab
from core.serializers.fields import encode_value

logger = logging.getLogger(__name__)


def _run_row(name, builder, k, **kwargs):
    try:
        # Rows travel through the broker as JSON, so numpy scalars are unwrapped here
        row = encode_value(builder(k, **kwargs), Mode.F64)
        row['holds'] = bool(row['holds'])
        logger.info('%s row k=%s computed (holds=%s)', name, k, row['holds'])
        return {
            'status': 'success',
            'row': row,
        }
    except HullcertError as e:
        logger.warning('%s row k=%s failed: %s', name, k, e)
        return {
            'status': 'error',
            'message': str(e),
            'exit_status': e.exit_status,
        }


@shared_task
def slit_row(k, n=DEMO_VERTICES):
    """
    One row of the slit-annulus convergence table
    """
    return _run_row('slit', hull_lab.slit_row, k, n=n)


@shared_task
def graph_row(k, n=DEMO_VERTICES, max_degree=3):
    """
    One row of the graph-family table: certificate for the limit, none for the k-th curve
    """
    return _run_row('graph', hull_lab.graph_row, k, n=n, max_degree=max_degree)


@shared_task
def kallin_row(k, m=DEMO_SAMPLES, degree=3, trials=50, seed=0):
    return _run_row('kallin', hull_lab.kallin_row, k, m=m, degree=degree, trials=trials, seed=seed)


@shared_task
def tangent_row(k, count=8, m=DEMO_SAMPLES):
    return _run_row('tangent', hull_lab.tangent_row, k, count=count, m=m)


DEMO_TASKS = {
    'slit': slit_row,
    'graph': graph_row,
    'kallin': kallin_row,
    'tangent': tangent_row,
}
