from django.db import models


class Knot(models.Model):
    """Сохранённый файл узла (документ KnotFile после проверки)"""

    name = models.CharField(max_length=255, unique=True)
    description = models.TextField(blank=True, default='')
    document = models.JSONField(help_text="Документ KnotFile: generators, differential, patches, heights")
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)
    is_active = models.BooleanField(default=True)

    class Meta:
        ordering = ['name']
        verbose_name = "Узел"
        verbose_name_plural = "Узлы"

    def __str__(self):
        return self.name

    def load(self):
        """Разбирает сохранённый документ в KnotData"""
        from api.knotfile import parse_knot_document
        return parse_knot_document(self.document)
