# Generated by Django 4.2.16 on 2026-10-17 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='RunRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(db_index=True, max_length=50)),
                ('mode', models.CharField(max_length=16)),
                ('seed', models.BigIntegerField(default=0)),
                ('tolerance', models.FloatField()),
                ('inputs', models.JSONField(default=dict)),
                ('artifacts', models.JSONField(default=list)),
                ('summary', models.JSONField(default=dict)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['command', 'created_at'], name='core_run_command_idx')],
            },
        ),
    ]
