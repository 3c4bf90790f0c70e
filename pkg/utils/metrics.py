"""
Métricas de distorção (MSE/PSNR) e taxa de erro de bits.
"""
import math
from typing import Sequence, Union

import numpy as np

from models import BitSequence, DistortionReport, ValueRange
from utils.errors import Empty, LengthMismatch

ArrayLike = Union[bytes, bytearray, np.ndarray, Sequence[int]]


def _as_array(values: ArrayLike) -> np.ndarray:
    if isinstance(values, (bytes, bytearray)):
        return np.frombuffer(bytes(values), dtype=np.uint8)
    return np.asarray(values)


def distortion(cover: ArrayLike, stego: ArrayLike, peak: ValueRange = ValueRange.BYTE) -> DistortionReport:
    """
    Compara duas sequências de mesmo tamanho.

    Args:
        cover: Bytes ou amostras originais
        stego: Bytes ou amostras modificados
        peak: Valor máximo do domínio (255 para bytes, 32767 para PCM 16 bits)

    Raises:
        LengthMismatch: tamanhos diferentes
        Empty: sequências vazias
    """
    a = _as_array(cover).astype(np.int64).ravel()
    b = _as_array(stego).astype(np.int64).ravel()
    if a.size != b.size:
        raise LengthMismatch(f"Tamanhos diferentes: {a.size} e {b.size}")
    if a.size == 0:
        raise Empty("Não há amostras para comparar")

    diff = a - b
    mse = float(np.mean(diff.astype(np.float64) ** 2))
    psnr = math.inf if mse == 0 else 10 * math.log10(int(peak) ** 2 / mse)
    return DistortionReport(
        mse=mse,
        psnr_db=psnr,
        max_abs_diff=int(np.abs(diff).max()),
        changed_byte_count=int(np.count_nonzero(diff)),
        peak=peak
    )


def bit_error_rate(sent: BitSequence, received: BitSequence) -> float:
    """
    Fração de posições em que as duas sequências diferem.

    Raises:
        LengthMismatch: tamanhos diferentes
        Empty: sequências vazias
    """
    if len(sent) != len(received):
        raise LengthMismatch(f"Sequências com {len(sent)} e {len(received)} bits")
    if not len(sent):
        raise Empty("Sequências de bits vazias")
    errors = np.count_nonzero(np.asarray(sent.bits) != np.asarray(received.bits))
    return errors / len(sent)
