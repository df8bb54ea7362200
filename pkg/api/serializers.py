import math

from django.core.serializers.json import DjangoJSONEncoder
from rest_framework import serializers

from core.diagram import ALLOWED_COEFFICIENTS
from core.exceptions import KnotFileError
from core.models import Knot
from core.numbers import INF_TOKEN, json_number, to_fraction


class ExactNumberField(serializers.Field):
    """Число без потери точности: int, Decimal или строка вида '3/10'"""

    default_error_messages = {
        'invalid': 'Ожидалось число.',
    }

    def to_internal_value(self, data):
        try:
            return to_fraction(data)
        except (ValueError, ZeroDivisionError, TypeError):
            self.fail('invalid')

    def to_representation(self, value):
        return json_number(value)


class DeathField(ExactNumberField):
    """Как ExactNumberField, но допускает строку 'inf'"""

    def to_internal_value(self, data):
        if isinstance(data, str) and data.strip().lower() == INF_TOKEN:
            return math.inf
        return super().to_internal_value(data)


class GeneratorSerializer(serializers.Serializer):
    name = serializers.CharField(max_length=64)
    grading = serializers.IntegerField()


class CornerSerializer(serializers.Serializer):
    name = serializers.CharField(max_length=64)
    coeff = serializers.ChoiceField(choices=ALLOWED_COEFFICIENTS)


class KnotFileSerializer(serializers.Serializer):
    """Схема KnotFile; смысловые проверки (имена, ∂², градуировки) делает api.knotfile"""

    generators = GeneratorSerializer(many=True)
    differential = serializers.DictField(
        child=serializers.ListField(child=serializers.ListField(child=serializers.CharField())),
        required=False,
        default=dict,
    )
    patches = serializers.ListField(child=CornerSerializer(many=True), required=False, default=list)
    heights = serializers.DictField(child=ExactNumberField(), required=False)
    ng_resolved = serializers.BooleanField(required=False, default=False)
    meta = serializers.JSONField(required=False, default=dict, encoder=DjangoJSONEncoder)


class BarSerializer(serializers.Serializer):
    degree = serializers.IntegerField()
    birth = ExactNumberField()
    death = DeathField()
    birth_label = serializers.CharField(required=False, allow_null=True, allow_blank=True)
    death_label = serializers.CharField(required=False, allow_null=True, allow_blank=True)


class BarcodeFileSerializer(serializers.Serializer):
    bars = BarSerializer(many=True)


class DistanceSerializer(serializers.Serializer):
    first = BarcodeFileSerializer()
    second = BarcodeFileSerializer()


class KnotSerializer(serializers.ModelSerializer):
    class Meta:
        model = Knot
        fields = ['id', 'name', 'description', 'document', 'created_at', 'is_active']
        read_only_fields = ['created_at']

    def validate_document(self, value):
        from api.knotfile import parse_knot_document, serialize_knot

        try:
            knot = parse_knot_document(value)
        except KnotFileError as exc:
            raise serializers.ValidationError(str(exc), code=exc.code)
        # Храним нормализованный документ с точными числами
        return serialize_knot(knot)
