from celery import Celery
import os

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'hullcert.settings')

app = Celery('hullcert')
app.config_from_object('django.conf:settings', namespace='CELERY')
app.autodiscover_tasks()
