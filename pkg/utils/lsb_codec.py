"""
Substituição LSB 2-3-3 em BMP 24 bits com espaçamento entre pixels.

Layout do arquivo estego:
    - bytes 6-9 (campo reserved): tamanho do payload, little-endian
    - byte info_size: marcador '1' (0x31)
    - bytes info_size+1 .. info_size+3: extensão com zeros à direita
    - grupo k*ps do carrier (k = 1..M), em grupos de 3 bytes: um byte do payload

O espaçamento ps = (file_size - data_offset) // (3 * M) é recalculado igual
na extração, então encoder e decoder sempre concordam. Quando M divide o
número de grupos, ps cai para (G - 1) // M (ver group_stride).
"""
import logging
import struct
from pathlib import PurePath
from typing import Optional

import numpy as np
from pydantic import ValidationError

from models import BmpImage, InspectionReport, PackedChannels, Payload, PayloadByte, StegoMetadata
from models.stego import EXTENSION_BYTES, STEGO_MARKER
from utils.bmp_format import replace_carrier, replace_header
from utils.errors import (
    BadParams,
    CapacityExceeded,
    CorruptMetadata,
    MetadataCollision,
    MetadataError,
    NotGenuineStego,
)

logger = logging.getLogger(__name__)

GROUP_SIZE = 3
RESERVED_OFFSET = 6
R_KEEP, G_KEEP, B_KEEP = 0xFC, 0xF8, 0xF8


def pack_byte(carrier: PackedChannels, ch: int) -> PackedChannels:
    """
    Esconde um byte em um grupo (r, g, b): 2 bits em r, 3 em g e 3 em b.

    Exemplo (caractere 'a' = 97):
        r 10010011 -> 10010001, g 11010101 -> 11010100, b 10110011 -> 10110001
    """
    payload = PayloadByte(ch=ch)
    return PackedChannels(
        r=(carrier.r & R_KEEP) | payload.ch_r,
        g=(carrier.g & G_KEEP) | payload.ch_g,
        b=(carrier.b & B_KEEP) | payload.ch_b
    )


def unpack_byte(carrier: PackedChannels) -> int:
    """Recupera o byte escondido em um grupo (r, g, b)."""
    return ((carrier.r & 0x03) << 6) | ((carrier.g & 0x07) << 3) | (carrier.b & 0x07)


def pack_groups(groups: np.ndarray, data: np.ndarray) -> np.ndarray:
    """Versão vetorizada de pack_byte sobre um array (N, 3) de uint8."""
    groups = np.asarray(groups, dtype=np.uint8)
    data = np.asarray(data, dtype=np.uint8)
    packed = np.empty_like(groups)
    packed[:, 0] = (groups[:, 0] & R_KEEP) | ((data & 0xC0) >> 6)
    packed[:, 1] = (groups[:, 1] & G_KEEP) | ((data & 0x38) >> 3)
    packed[:, 2] = (groups[:, 2] & B_KEEP) | (data & 0x07)
    return packed


def unpack_groups(groups: np.ndarray) -> np.ndarray:
    """Versão vetorizada de unpack_byte; retorna um array uint8 de N bytes."""
    groups = np.asarray(groups, dtype=np.uint8)
    return ((groups[:, 0] & 0x03) << 6) | ((groups[:, 1] & 0x07) << 3) | (groups[:, 2] & 0x07)


def pixel_spacing(carrier_len_bytes: int, payload_size: int) -> int:
    """
    Distância, em grupos de 3 bytes, entre bytes consecutivos do payload.

    Raises:
        BadParams: payload_size < 1
        CapacityExceeded: o espaçamento seria 0
    """
    if payload_size < 1:
        raise BadParams(f"payload_size deve ser >= 1, recebido {payload_size}")
    spacing = carrier_len_bytes // (GROUP_SIZE * payload_size)
    if spacing < 1:
        raise CapacityExceeded(
            f"Payload de {payload_size} bytes não cabe em carrier de {carrier_len_bytes} bytes"
        )
    return spacing


def group_stride(carrier_len_bytes: int, payload_size: int) -> int:
    """
    Passo efetivamente usado por embed/extract.

    É o pixel_spacing, exceto quando M divide o número de grupos G: nesse caso
    M * ps == G cairia um grupo além do fim, e o passo passa a ser (G - 1) // M.
    Para qualquer outro M os dois valores coincidem, então o layout do arquivo
    não muda.

    Raises:
        BadParams: payload_size < 1
        CapacityExceeded: o último grupo usado ficaria fora do carrier
    """
    spacing = pixel_spacing(carrier_len_bytes, payload_size)
    last_group = carrier_len_bytes // GROUP_SIZE - 1
    if payload_size * spacing > last_group:
        spacing = last_group // payload_size
    if spacing < 1 or payload_size * spacing > last_group:
        raise CapacityExceeded(
            f"Payload de {payload_size} bytes ultrapassaria o último grupo ({last_group}) do carrier"
        )
    return spacing


def capacity(image: BmpImage) -> int:
    """Maior payload M tal que ps >= 1 e M * ps <= G - 1 (G = número de grupos)."""
    groups = len(image.carrier) // GROUP_SIZE
    for size in range(groups - 1, 0, -1):
        if size * (groups // size) <= groups - 1:
            return size
    return 0


def _carrier_groups(carrier: bytes) -> np.ndarray:
    """Cópia mutável do carrier e a visão (G, 3) dos grupos completos."""
    buffer = np.frombuffer(carrier, dtype=np.uint8).copy()
    count = len(buffer) // GROUP_SIZE
    return buffer, buffer[:count * GROUP_SIZE].reshape(count, GROUP_SIZE)


def embed(cover: BmpImage, payload: Payload) -> BmpImage:
    """
    Esconde o payload no BMP.

    Args:
        cover: Imagem de cobertura
        payload: Arquivo a esconder (bytes + extensão)

    Returns:
        Imagem estego com o mesmo tamanho da cobertura

    Raises:
        MetadataCollision: o marcador invadiria a região de pixels
        CapacityExceeded: payload maior que capacity(cover)
    """
    header = cover.header
    if header.info_size + 1 + EXTENSION_BYTES > header.data_offset:
        raise MetadataCollision(
            f"Marcador em {header.info_size} invadiria os pixels (data_offset={header.data_offset})"
        )

    size = len(payload.data)
    limit = capacity(cover)
    if size > limit:
        raise CapacityExceeded(f"Payload de {size} bytes excede a capacidade de {limit} bytes")
    spacing = group_stride(len(cover.carrier), size)

    raw_header = bytearray(header.raw_header_bytes)
    struct.pack_into("<I", raw_header, RESERVED_OFFSET, size)
    raw_header[header.info_size] = STEGO_MARKER
    raw_header[header.info_size + 1:header.info_size + 1 + EXTENSION_BYTES] = payload.extension_bytes()

    buffer, groups = _carrier_groups(cover.carrier)
    positions = spacing * np.arange(1, size + 1)
    groups[positions] = pack_groups(groups[positions], np.frombuffer(payload.data, dtype=np.uint8))

    logger.debug(f"embed: {size} byte(s), pixel_spacing={spacing}, último grupo={positions[-1]}")
    return replace_carrier(replace_header(cover, bytes(raw_header)), buffer.tobytes())


def _read_metadata(image: BmpImage) -> StegoMetadata:
    """Lê e valida os metadados do cabeçalho; levanta MetadataError se ausentes ou inválidos."""
    header = image.header
    raw = header.raw_header_bytes
    if header.info_size + 1 + EXTENSION_BYTES > len(raw) or raw[header.info_size] != STEGO_MARKER:
        raise NotGenuineStego("Formato não reconhecido... não pode ser extraído")

    size = header.reserved
    if size == 0:
        raise CorruptMetadata("Tamanho de payload igual a zero")
    try:
        spacing = group_stride(len(image.carrier), size)
    except CapacityExceeded as e:
        raise CorruptMetadata(
            f"Tamanho declarado ({size} bytes) incompatível com carrier de {len(image.carrier)} bytes"
        ) from e
    try:
        return StegoMetadata(
            payload_size=size,
            extension=raw[header.info_size + 1:header.info_size + 1 + EXTENSION_BYTES],
            pixel_spacing=spacing
        )
    except ValidationError as e:
        raise CorruptMetadata(f"Extensão inválida no cabeçalho: {e.errors()[0]['msg']}") from e


def extract(stego: BmpImage) -> Payload:
    """
    Recupera o payload escondido por embed.

    Raises:
        NotGenuineStego: marcador ausente
        CorruptMetadata: tamanho ou extensão inconsistentes
    """
    metadata = _read_metadata(stego)
    _, groups = _carrier_groups(stego.carrier)
    positions = metadata.pixel_spacing * np.arange(1, metadata.payload_size + 1)
    data = unpack_groups(groups[positions]).astype(np.uint8).tobytes()
    logger.debug(f"extract: {metadata.payload_size} byte(s), pixel_spacing={metadata.pixel_spacing}")
    return Payload(data=data, extension=metadata.extension_text)


def inspect(image: BmpImage) -> InspectionReport:
    """Relatório não destrutivo dos metadados; metadados ruins são reportados, nunca levantados."""
    header = image.header
    raw = header.raw_header_bytes
    info = header.info_size
    claimed = header.reserved
    try:
        spacing = group_stride(len(image.carrier), claimed) if claimed else 0
    except CapacityExceeded:
        spacing = 0
    extension = raw[info + 1:info + 1 + EXTENSION_BYTES].split(b"\x00", 1)[0].decode("latin-1")
    report = dict(
        claimed_payload_size=claimed,
        extension=extension,
        pixel_spacing=spacing,
        capacity=capacity(image)
    )

    try:
        metadata = _read_metadata(image)
    except NotGenuineStego:
        return InspectionReport(marker_present=False, plausible=False, detail="sem marcador", **report)
    except MetadataError as e:
        logger.warning(f"Marcador presente, metadados implausíveis: {e}")
        return InspectionReport(
            marker_present=True,
            plausible=False,
            detail=f"marcador presente, metadados implausíveis: {e}",
            **report
        )
    return InspectionReport(
        marker_present=True,
        plausible=True,
        metadata=metadata,
        detail="estego genuíno",
        **report
    )


def build_payload(file_name: str, data: bytes, extension: Optional[str] = None) -> Payload:
    """
    Monta o Payload de um arquivo; a extensão vem do texto após o último ponto do nome.

    Args:
        file_name: Nome ou caminho do arquivo de payload
        data: Conteúdo do arquivo
        extension: Extensão explícita (sobrepõe a do nome)
    """
    if extension is None:
        name = PurePath(file_name).name
        extension = name.rsplit(".", 1)[1] if "." in name else ""
    return Payload(data=data, extension=extension)
