from django.db import models


class RunRecord(models.Model):
    """One CLI run: what was asked, from which inputs, and what came out."""

    command = models.CharField(max_length=50, db_index=True)
    mode = models.CharField(max_length=16)
    seed = models.BigIntegerField(default=0)
    tolerance = models.FloatField()
    inputs = models.JSONField(default=dict)  # name -> sha256 of the canonical input
    artifacts = models.JSONField(default=list)  # paths written by the run
    summary = models.JSONField(default=dict)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['command', 'created_at'], name='core_run_command_idx'),
        ]

    def __str__(self):
        return f"{self.command} ({self.mode}, seed {self.seed}) - {self.created_at:%Y-%m-%d %H:%M}"

    @classmethod
    def from_provenance(cls, provenance, artifacts, summary):
        return cls.objects.create(
            command=provenance['command'],
            mode=provenance['mode'],
            seed=provenance['seed'],
            tolerance=provenance['tolerance'],
            inputs=provenance['inputs'],
            artifacts=[str(path) for path in artifacts],
            summary=summary,
        )
