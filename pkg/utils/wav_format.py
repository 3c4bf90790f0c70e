"""
Leitura e escrita bit-exata de WAV PCM 16 bits.

Todos os chunks são mantidos na ordem original, inclusive os desconhecidos,
o byte de alinhamento de corpos ímpares e qualquer sobra após o corpo RIFF.
"""
import logging
import struct

from models import RiffChunk, WavClip
from models.wav import DATA_CHUNK_ID, FMT_CHUNK_ID, PCM_FORMAT_TAG
from utils.errors import NotWav, Truncated, UnsupportedWav

logger = logging.getLogger(__name__)

RIFF_MAGIC = b"RIFF"
WAVE_MAGIC = b"WAVE"
MIN_WAV_SIZE = 44
FMT_FIELDS = "<HHIIHH"


def _read_chunks(data: bytes, body_end: int) -> list:
    chunks = []
    offset = 12
    while offset < body_end:
        if body_end - offset < 8:
            raise Truncated(f"Cabeçalho de chunk incompleto no offset {offset}")
        chunk_id, size = struct.unpack_from("<4sI", data, offset)
        start = offset + 8
        end = start + size
        if end > body_end:
            raise Truncated(f"Chunk {chunk_id!r} declara {size} bytes, restam {body_end - start}")
        pad = data[end:end + 1] if size % 2 and end < body_end else b""
        chunks.append(RiffChunk(chunk_id=chunk_id, body=data[start:end], pad=pad))
        offset = end + len(pad)
    return chunks


def parse_wav(data: bytes) -> WavClip:
    """
    Decodifica um container RIFF/WAVE PCM 16 bits.

    Raises:
        NotWav: sem assinatura RIFF/WAVE
        Truncated: arquivo curto ou chunk além do fim
        UnsupportedWav: formato diferente de PCM 16 bits, ou chunks fmt/data ausentes ou repetidos
    """
    data = bytes(data)
    if data[:4] != RIFF_MAGIC or data[8:12] != WAVE_MAGIC:
        raise NotWav(f"Assinatura inválida: {data[:4]!r}/{data[8:12]!r}")
    if len(data) < MIN_WAV_SIZE:
        raise Truncated(f"WAV com {len(data)} bytes, mínimo {MIN_WAV_SIZE}")

    riff_size = struct.unpack_from("<I", data, 4)[0]
    body_end = 8 + riff_size
    if body_end > len(data):
        raise Truncated(f"RIFF declara {riff_size} bytes, arquivo tem {len(data) - 8}")

    chunks = _read_chunks(data, body_end)
    ids = [c.chunk_id for c in chunks]
    for required in (FMT_CHUNK_ID, DATA_CHUNK_ID):
        if ids.count(required) != 1:
            raise UnsupportedWav(f"Esperado exatamente um chunk {required!r}, encontrado {ids.count(required)}")

    fmt = next(c for c in chunks if c.chunk_id == FMT_CHUNK_ID)
    if len(fmt.body) < struct.calcsize(FMT_FIELDS):
        raise Truncated(f"Chunk 'fmt ' com {len(fmt.body)} bytes")
    format_tag, channels, sample_rate, _, block_align, bits = struct.unpack_from(FMT_FIELDS, fmt.body)
    if format_tag != PCM_FORMAT_TAG:
        raise UnsupportedWav(f"Apenas PCM (format tag 1) suportado, recebido {format_tag}")
    if bits != 16:
        raise UnsupportedWav(f"Apenas 16 bits por amostra suportado, recebido {bits}")
    if channels == 0 or sample_rate == 0:
        raise UnsupportedWav(f"fmt inválido: channels={channels}, sample_rate={sample_rate}")

    data_chunk = next(c for c in chunks if c.chunk_id == DATA_CHUNK_ID)
    if len(data_chunk.body) % (2 * channels):
        raise UnsupportedWav(f"Chunk 'data' de {len(data_chunk.body)} bytes não é múltiplo de {2 * channels}")

    logger.debug(
        f"WAV {sample_rate} Hz, {channels} canal(is), "
        f"{len(data_chunk.body) // (2 * channels)} amostras/canal, block_align={block_align}"
    )
    return WavClip(
        sample_rate=sample_rate,
        channels=channels,
        bits_per_sample=bits,
        riff_size=riff_size,
        chunks=tuple(chunks),
        trailing=data[body_end:]
    )


def write_wav(clip: WavClip) -> bytes:
    """Serializa o clip reproduzindo exatamente o layout lido por parse_wav."""
    parts = [RIFF_MAGIC, struct.pack("<I", clip.riff_size), WAVE_MAGIC]
    for chunk in clip.chunks:
        parts.append(chunk.chunk_id + struct.pack("<I", len(chunk.body)) + chunk.body + chunk.pad)
    parts.append(clip.trailing)
    return b"".join(parts)
