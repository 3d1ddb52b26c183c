from rest_framework import serializers

from apps.algebra.exceptions import ParseError
from apps.algebra.services.scalars import parse_scalar
from apps.scenarios.services.config import MODES, OMEGA_SQUARES


def _scalar_text(value: str) -> str:
    try:
        parse_scalar(value)
    except ParseError as exc:
        raise serializers.ValidationError(str(exc)) from exc
    return value


class ScenarioQuerySerializer(serializers.Serializer):
    """Query parameters of a scenario run; `lambda` arrives renamed to `lam`."""

    cap = serializers.IntegerField(required=False, min_value=2)
    mode = serializers.ChoiceField(choices=MODES, required=False)
    t = serializers.CharField(required=False)
    lam = serializers.CharField(required=False)
    mu_value = serializers.CharField(required=False)
    omega_sq = serializers.ChoiceField(choices=OMEGA_SQUARES, required=False)

    def validate_t(self, value):
        return _scalar_text(value)

    def validate_lam(self, value):
        return _scalar_text(value)

    def validate_mu_value(self, value):
        return _scalar_text(value)


class SuiteQuerySerializer(serializers.Serializer):
    group = serializers.CharField(required=False)
    calculus = serializers.CharField(required=False)
    bundle = serializers.CharField(required=False)
    cap = serializers.IntegerField(required=False, min_value=2)
    mode = serializers.ChoiceField(choices=MODES, required=False)
    lam = serializers.CharField(required=False)

    def validate_lam(self, value):
        return _scalar_text(value)


class QuantitySerializer(serializers.Serializer):
    name = serializers.CharField()
    value = serializers.CharField(source='rendered')
    target = serializers.CharField(allow_null=True)
    matched = serializers.BooleanField()
