from core.tasks.demo_tables import DEMO_TASKS, graph_row, kallin_row, slit_row, tangent_row

__all__ = ('DEMO_TASKS', 'graph_row', 'kallin_row', 'slit_row', 'tangent_row')
