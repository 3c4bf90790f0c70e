"""
Configuração de fixtures para os testes do toolkit de esteganografia.

Nenhum arquivo binário é versionado: BMPs e WAVs são gerados em memória.
"""
import struct
from typing import Iterable, Optional, Tuple

import numpy as np
import pytest


def make_bmp(
    width: int,
    height: int,
    pixels: Optional[bytes] = None,
    seed: int = 0,
    bpp: int = 24,
    info_size: int = 40,
    reserved: int = 0
) -> bytes:
    """Gera um BMP com BITMAPINFOHEADER (ou maior); pixels aleatórios se não informados."""
    row = ((width * bpp // 8) + 3) // 4 * 4
    if pixels is None:
        rng = np.random.default_rng(seed)
        pixels = rng.integers(0, 256, row * height, dtype=np.uint8).tobytes()
    data_offset = 14 + info_size
    file_size = data_offset + len(pixels)
    header = struct.pack(
        "<2sIIIIiiHHIIiiII",
        b"BM", file_size, reserved, data_offset,
        info_size, width, height, 1, bpp, 0, len(pixels), 2835, 2835, 0, 0
    )
    return header + b"\x00" * (info_size - 40) + pixels


def make_wav(
    body: bytes,
    sample_rate: int = 8000,
    channels: int = 1,
    bits: int = 16,
    format_tag: int = 1,
    extra_chunks: Iterable[Tuple[bytes, bytes]] = ()
) -> bytes:
    """Gera um WAV com fmt, chunks extras (antes do data) e data."""
    block_align = channels * bits // 8
    fmt = struct.pack("<HHIIHH", format_tag, channels, sample_rate, sample_rate * block_align, block_align, bits)
    chunks = b"fmt " + struct.pack("<I", len(fmt)) + fmt
    for chunk_id, chunk_body in extra_chunks:
        chunks += chunk_id + struct.pack("<I", len(chunk_body)) + chunk_body + b"\x00" * (len(chunk_body) % 2)
    chunks += b"data" + struct.pack("<I", len(body)) + body
    return b"RIFF" + struct.pack("<I", 4 + len(chunks)) + b"WAVE" + chunks


def pcm_body(samples: np.ndarray) -> bytes:
    return np.asarray(samples, dtype="<i2").tobytes()


def noise_samples(seed: int, count: int = 80000, amplitude: int = 8000) -> np.ndarray:
    """Ruído branco uniforme em [-amplitude, amplitude]."""
    rng = np.random.default_rng(seed)
    return rng.integers(-amplitude, amplitude + 1, count).astype(np.int16)


@pytest.fixture
def cover_100_bytes() -> bytes:
    """BMP 100x100 aleatório: carrier de 30000 bytes, 10000 grupos."""
    return make_bmp(100, 100, seed=42)


@pytest.fixture
def cover_2x2_bytes() -> bytes:
    """BMP 2x2 com padding de linha (carrier de 16 bytes)."""
    return make_bmp(2, 2, seed=7)


@pytest.fixture
def sine_wav_bytes() -> bytes:
    """Um segundo de senoide de 440 Hz a 8000 Hz, mono."""
    t = np.arange(8000) / 8000
    samples = np.round(10000 * np.sin(2 * np.pi * 440 * t)).astype(np.int16)
    return make_wav(pcm_body(samples))


@pytest.fixture
def noise_wav_bytes() -> bytes:
    """10 s de ruído a 8000 Hz, amplitude +-8000."""
    return make_wav(pcm_body(noise_samples(seed=0)))
