"""
Leitura e escrita bit-exata de BMPs 24 bits sem compressão.

A região de pixels é tratada como uma sequência plana de bytes (padding de
linha incluído); nenhum valor de pixel é interpretado aqui.
"""
import logging
import struct

from models import BmpHeader, BmpImage
from models.bmp import BMP_MAGIC, FILE_HEADER_SIZE
from utils.errors import NotBmp, Truncated, UnsupportedBmp

logger = logging.getLogger(__name__)

# identity, f_size, reserved, offset, head_size, wid, height, plane, bpp, compression
HEADER_FMT = "<2sIIIIiiHHI"
MIN_BMP_SIZE = 54
MIN_INFO_SIZE = 40


def parse_bmp(data: bytes) -> BmpImage:
    """
    Decodifica um BMP 24 bits.

    Args:
        data: Conteúdo completo do arquivo

    Returns:
        BmpImage cuja serialização é idêntica à entrada

    Raises:
        NotBmp: assinatura diferente de 'BM'
        Truncated: arquivo menor que o cabeçalho, que file_size ou que data_offset
        UnsupportedBmp: bpp != 24, compressão, top-down, info header antigo ou layout inconsistente
    """
    data = bytes(data)
    if data[:2] != BMP_MAGIC:
        raise NotBmp(f"Assinatura inválida: {data[:2]!r} (esperado {BMP_MAGIC!r})")
    if len(data) < MIN_BMP_SIZE:
        raise Truncated(f"BMP com {len(data)} bytes, mínimo {MIN_BMP_SIZE}")

    (magic, file_size, reserved, data_offset, info_size,
     width, height, planes, bpp, compression) = struct.unpack_from(HEADER_FMT, data, 0)

    if file_size > len(data):
        raise Truncated(f"file_size declarado ({file_size}) maior que o arquivo ({len(data)})")
    if data_offset > len(data):
        raise Truncated(f"data_offset ({data_offset}) além do fim do arquivo ({len(data)})")
    if file_size < len(data):
        raise UnsupportedBmp(f"{len(data) - file_size} byte(s) após o file_size declarado")
    if info_size < MIN_INFO_SIZE:
        raise UnsupportedBmp(f"info header de {info_size} bytes não suportado (mínimo {MIN_INFO_SIZE})")
    if bpp != 24:
        raise UnsupportedBmp(f"Apenas BMP 24 bits suportado, recebido {bpp} bpp")
    if compression != 0:
        raise UnsupportedBmp(f"BMP comprimido não suportado (compression={compression})")
    if planes != 1:
        raise UnsupportedBmp(f"planes deve ser 1, recebido {planes}")
    if height < 0:
        raise UnsupportedBmp("BMP top-down (altura negativa) não suportado")
    if data_offset < FILE_HEADER_SIZE + info_size or data_offset > file_size:
        raise UnsupportedBmp(f"data_offset ({data_offset}) inconsistente com info_size ({info_size})")

    header = BmpHeader(
        magic=magic,
        file_size=file_size,
        reserved=reserved,
        data_offset=data_offset,
        info_size=info_size,
        width=width,
        height=height,
        planes=planes,
        bits_per_pixel=bpp,
        compression=compression,
        raw_header_bytes=data[:data_offset]
    )
    logger.debug(f"BMP {width}x{height}: data_offset={data_offset}, carrier={file_size - data_offset} bytes")
    return BmpImage(header=header, carrier=data[data_offset:file_size])


def write_bmp(image: BmpImage) -> bytes:
    """Serializa o BMP: cabeçalho verbatim seguido do carrier."""
    return image.header.raw_header_bytes + image.carrier


def replace_header(image: BmpImage, raw_header: bytes) -> BmpImage:
    """Reconstrói a imagem com novos bytes de cabeçalho, revalidando todos os campos."""
    return parse_bmp(bytes(raw_header) + image.carrier)


def replace_carrier(image: BmpImage, carrier: bytes) -> BmpImage:
    """Nova imagem com o carrier trocado; o tamanho deve ser mantido."""
    return BmpImage(header=image.header, carrier=bytes(carrier))
