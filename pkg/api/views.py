import logging

from drf_yasg import openapi
from drf_yasg.utils import swagger_auto_schema
from rest_framework import status, viewsets
from rest_framework.decorators import action
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from core.augment import enumerate_augmentations
from core.exceptions import LegchError, PreconditionError
from core.metrics import check_strong_morse, interleaving_distance
from core.models import Knot
from core.numbers import json_number
from core.pipeline import HEIGHTS_AUTO, compute_barcode_for, run_flooding
from .knotfile import parse_barcode_document, serialize_barcode
from .permissions import ReadOnlyOrTokenPermission
from .serializers import DistanceSerializer, KnotSerializer

logger = logging.getLogger(__name__)

aug_param = openapi.Parameter('aug', openapi.IN_QUERY, description="Номер аугментации", type=openapi.TYPE_INTEGER)
heights_param = openapi.Parameter(
    'heights', openapi.IN_QUERY, description="auto | flood | file", type=openapi.TYPE_STRING
)


class LegchErrorMixin:
    """Ошибки вычислений -> 400 {"error", "code"}"""

    def handle_exception(self, exc):
        if isinstance(exc, LegchError):
            logger.warning(f"Ошибка вычисления: {exc.code}: {exc.message}")
            return Response({'error': exc.message, 'code': exc.code}, status=status.HTTP_400_BAD_REQUEST)
        return super().handle_exception(exc)


def _aug_index(request) -> int:
    raw = request.query_params.get('aug', '0')
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"aug должен быть целым числом, получено {raw!r}") from None


class KnotViewSet(LegchErrorMixin, viewsets.ModelViewSet):
    queryset = Knot.objects.all()
    serializer_class = KnotSerializer
    permission_classes = [ReadOnlyOrTokenPermission]

    @action(detail=True, methods=['get'])
    def augmentations(self, request, pk=None):
        knot = self.get_object().load()
        augmentations = enumerate_augmentations(knot.dga)
        return Response({
            'count': len(augmentations),
            'augmentations': [
                {
                    'index': index,
                    'values': {g.name: eps[g.id] for g in knot.dga.generators if g.grading == 0},
                }
                for index, eps in enumerate(augmentations)
            ],
        })

    @action(detail=True, methods=['get'])
    def flood(self, request, pk=None):
        knot = self.get_object().load()
        result = run_flooding(knot)
        name = knot.dga.format_word
        payload = {
            'status': result.tiering.status,
            'tiers': [[name((i,)) for i in sorted(tier)] for tier in result.tiering.tiers],
            'unassigned': [name((i,)) for i in sorted(result.tiering.unassigned)],
        }
        if result.heights is not None:
            payload['heights'] = {g.name: json_number(result.heights[g.id]) for g in knot.dga.generators}
        return Response(payload)

    @swagger_auto_schema(method='get', manual_parameters=[aug_param, heights_param])
    @action(detail=True, methods=['get'])
    def barcode(self, request, pk=None):
        knot = self.get_object().load()
        aug = _aug_index(request)
        heights = request.query_params.get('heights', HEIGHTS_AUTO)
        result = compute_barcode_for(knot, aug, heights)
        logger.info(f"Баркод узла {pk}: aug={aug}, heights={heights}")
        return Response({'aug': aug, 'heights_mode': heights, **serialize_barcode(result.barcode)})

    @swagger_auto_schema(method='get', manual_parameters=[aug_param, heights_param])
    @action(detail=True, methods=['get'])
    def morse(self, request, pk=None):
        knot = self.get_object().load()
        result = compute_barcode_for(knot, _aug_index(request), request.query_params.get('heights', HEIGHTS_AUTO))
        report = check_strong_morse(knot.dga, result.barcode)
        return Response({
            'mc': str(report.mc),
            'pc': str(report.pc),
            'r': str(report.r),
            'holds': report.holds,
        })


class DistanceView(LegchErrorMixin, APIView):
    """Расстояние между двумя баркодами в формате BarcodeFile"""

    permission_classes = [AllowAny]

    @swagger_auto_schema(request_body=DistanceSerializer)
    def post(self, request):
        first = parse_barcode_document(request.data.get('first'))
        second = parse_barcode_document(request.data.get('second'))
        distance = interleaving_distance(first, second)
        return Response({'distance': json_number(distance)})
