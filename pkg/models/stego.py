from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from utils.errors import ExtensionTooLong


STEGO_MARKER = 0x31
EXTENSION_BYTES = 3


class PackedChannels(BaseModel):
    """Grupo (r, g, b) de três bytes consecutivos do carrier"""
    model_config = ConfigDict(frozen=True)

    r: int = Field(..., ge=0, le=255, description="Primeiro byte do grupo (recebe 2 bits)")
    g: int = Field(..., ge=0, le=255, description="Segundo byte do grupo (recebe 3 bits)")
    b: int = Field(..., ge=0, le=255, description="Terceiro byte do grupo (recebe 3 bits)")


class PayloadByte(BaseModel):
    """Um byte do payload dividido nas fatias 2-3-3"""
    model_config = ConfigDict(frozen=True)

    ch: int = Field(..., ge=0, le=255, description="Byte do payload")

    @property
    def ch_r(self) -> int:
        return (self.ch & 0xC0) >> 6

    @property
    def ch_g(self) -> int:
        return (self.ch & 0x38) >> 3

    @property
    def ch_b(self) -> int:
        return self.ch & 0x07


class StegoMetadata(BaseModel):
    """Metadados gravados no cabeçalho de um BMP estego"""
    model_config = ConfigDict(frozen=True)

    payload_size: int = Field(..., ge=1, le=0xFFFFFFFF, description="Tamanho do payload em bytes")
    extension: bytes = Field(..., min_length=EXTENSION_BYTES, max_length=EXTENSION_BYTES,
                             description="Extensão ASCII com zeros à direita")
    marker: Literal[0x31] = Field(default=STEGO_MARKER, description="Marcador de estego genuíno ('1')")
    pixel_spacing: int = Field(..., ge=1, description="Espaçamento entre grupos usados")

    @field_validator("extension")
    @classmethod
    def validate_extension(cls, v: bytes) -> bytes:
        """Nenhum byte não nulo pode aparecer depois do primeiro 0x00"""
        head, sep, tail = v.partition(b"\x00")
        if sep and tail.strip(b"\x00"):
            raise ValueError(f"Extensão com bytes após o terminador: {v!r}")
        if b"." in head or not all(0x20 <= c <= 0x7E for c in head):
            raise ValueError(f"Extensão deve ser ASCII imprimível, sem ponto: {v!r}")
        return v

    @property
    def extension_text(self) -> str:
        return self.extension.split(b"\x00", 1)[0].decode("ascii")


class Payload(BaseModel):
    """Arquivo a ser escondido: bytes opacos + extensão de até 3 caracteres"""
    model_config = ConfigDict(frozen=True)

    data: bytes = Field(..., min_length=1, description="Conteúdo do arquivo")
    extension: str = Field(default="", description="Extensão sem ponto (0-3 caracteres ASCII)")

    @field_validator("extension")
    @classmethod
    def validate_extension(cls, v: str) -> str:
        if len(v) > EXTENSION_BYTES:
            raise ExtensionTooLong(f"Extensão '{v}' tem {len(v)} caracteres (máximo {EXTENSION_BYTES})")
        if "." in v or not all(c.isascii() and c.isprintable() for c in v):
            raise ValueError(f"Extensão '{v}' deve conter apenas ASCII imprimível, sem ponto")
        return v

    def extension_bytes(self) -> bytes:
        return self.extension.encode("ascii").ljust(EXTENSION_BYTES, b"\x00")


class InspectionReport(BaseModel):
    """Resultado não destrutivo de inspect: nunca falha com metadados ruins"""
    model_config = ConfigDict(frozen=True)

    marker_present: bool = Field(..., description="Byte em info_size igual a '1'")
    plausible: bool = Field(..., description="Metadados consistentes com o carrier")
    claimed_payload_size: int = Field(..., description="Valor do campo reserved")
    extension: str = Field(default="", description="Extensão lida (latin-1, até o primeiro 0x00)")
    pixel_spacing: int = Field(default=0, description="Espaçamento derivado, 0 se não calculável")
    capacity: int = Field(..., description="Capacidade do carrier em bytes")
    metadata: Optional[StegoMetadata] = Field(default=None, description="Metadados válidos, se plausíveis")
    detail: str = Field(default="", description="Descrição legível do diagnóstico")
