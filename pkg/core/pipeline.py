"""
Общий конвейер для CLI и API: узел -> аугментация -> высоты -> баркод.
"""

import logging
from dataclasses import dataclass, field

from core.algebra import DGA, HeightAssignment
from core.augment import Augmentation, LinearizedComplex, enumerate_augmentations, linearized_differential
from core.diagram import (
    LagrangianDiagramData,
    Tiering,
    area_inequalities,
    assign_heights,
    flood,
    perturb_heights,
)
from core.exceptions import FloodingError, PreconditionError
from core.persist import Barcode, FilteredComplex, build_filtered_complex, compute_barcode

logger = logging.getLogger(__name__)

HEIGHTS_AUTO = 'auto'
HEIGHTS_FLOOD = 'flood'
HEIGHTS_FILE = 'file'
HEIGHTS_MODES = (HEIGHTS_AUTO, HEIGHTS_FLOOD, HEIGHTS_FILE)


@dataclass(frozen=True)
class KnotData:
    dga: DGA
    diagram: LagrangianDiagramData
    heights: HeightAssignment = None
    meta: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class FloodResult:
    tiering: Tiering
    heights: HeightAssignment = None


@dataclass(frozen=True)
class BarcodeResult:
    augmentation: Augmentation
    heights: HeightAssignment
    lin: LinearizedComplex
    complex: FilteredComplex
    barcode: Barcode


def run_flooding(knot: KnotData, perturb: bool = False) -> FloodResult:
    system = area_inequalities(knot.diagram)
    tiering = flood(system, knot.diagram.crossings)
    if not tiering.succeeded:
        return FloodResult(tiering)
    heights = assign_heights(tiering)
    if perturb:
        heights = perturb_heights(tiering, heights, system)
    return FloodResult(tiering, heights)


def select_augmentation(knot: KnotData, aug_index: int) -> Augmentation:
    augmentations = enumerate_augmentations(knot.dga)
    if not augmentations:
        raise PreconditionError("У DGA нет аугментаций")
    if not 0 <= aug_index < len(augmentations):
        raise PreconditionError(
            f"Номер аугментации {aug_index} вне диапазона 0..{len(augmentations) - 1}"
        )
    return augmentations[aug_index]


def resolve_heights(knot: KnotData, heights_mode: str = HEIGHTS_AUTO) -> HeightAssignment:
    """Высоты из файла имеют приоритет в режиме auto; flood принудительно запускает затопление"""
    if heights_mode not in HEIGHTS_MODES:
        raise PreconditionError(f"Неизвестный режим высот {heights_mode!r}")
    if heights_mode == HEIGHTS_FILE and knot.heights is None:
        raise PreconditionError("В файле нет высот")
    if heights_mode != HEIGHTS_FLOOD and knot.heights is not None:
        return knot.heights

    result = run_flooding(knot)
    if result.heights is None:
        unassigned = ', '.join(knot.dga.format_word((i,)) for i in sorted(result.tiering.unassigned))
        raise FloodingError(f"Затопление не удалось, не распределены: {unassigned}", tiering=result.tiering)
    return result.heights


def compute_barcode_for(knot: KnotData, aug_index: int = 0, heights_mode: str = HEIGHTS_AUTO) -> BarcodeResult:
    eps = select_augmentation(knot, aug_index)
    heights = resolve_heights(knot, heights_mode)
    lin = linearized_differential(knot.dga, eps)
    fc = build_filtered_complex(lin, heights)
    barcode = compute_barcode(fc)
    logger.info(f"Баркод для аугментации {aug_index} ({heights_mode}): {len(barcode)} полос")
    return BarcodeResult(eps, heights, lin, fc, barcode)
