from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from utils.errors import BadParams


class EchoParams(BaseModel):
    """Parâmetros do echo hiding: um atraso por valor de bit, decaimento e tamanho do segmento"""
    model_config = ConfigDict(frozen=True)

    delay_zero: int = Field(default=50, description="Atraso em amostras para o bit 0")
    delay_one: int = Field(default=100, description="Atraso em amostras para o bit 1")
    decay: float = Field(default=0.5, description="Amplitude relativa do eco, em (0, 1)")
    segment_len: int = Field(default=1024, description="Amostras por bit")

    @model_validator(mode="after")
    def check_invariants(self):
        if min(self.delay_zero, self.delay_one, self.segment_len) <= 0:
            raise BadParams("Atrasos e segment_len devem ser positivos")
        if self.delay_zero == self.delay_one:
            raise BadParams(f"delay_zero e delay_one devem diferir (ambos {self.delay_zero})")
        if 2 * max(self.delay_zero, self.delay_one) >= self.segment_len:
            raise BadParams(
                f"Maior atraso ({max(self.delay_zero, self.delay_one)}) deve ser menor que "
                f"segment_len/2 ({self.segment_len / 2})"
            )
        if not 0.0 < self.decay < 1.0:
            raise BadParams(f"decay deve estar em (0, 1), recebido {self.decay}")
        return self


class BitSequence(BaseModel):
    """Sequência ordenada de bits carregada pelo eco"""
    model_config = ConfigDict(frozen=True)

    bits: Tuple[int, ...] = Field(default=(), description="Bits 0/1 em ordem")

    @field_validator("bits")
    @classmethod
    def validate_bits(cls, v):
        if any(b not in (0, 1) for b in v):
            raise ValueError("Bits devem ser 0 ou 1")
        return v

    def __len__(self) -> int:
        return len(self.bits)

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitSequence":
        """Bits de cada byte, do mais significativo para o menos significativo"""
        return cls(bits=tuple((byte >> shift) & 1 for byte in data for shift in range(7, -1, -1)))

    def to_bytes(self) -> bytes:
        """Inverso de from_bytes; o último byte é completado com zeros"""
        out = bytearray()
        for start in range(0, len(self.bits), 8):
            chunk = self.bits[start:start + 8]
            value = 0
            for bit in chunk:
                value = (value << 1) | bit
            out.append(value << (8 - len(chunk)))
        return bytes(out)


class DelayEstimate(BaseModel):
    """Atraso mais provável de um segmento e a força do pico no cepstrum"""
    model_config = ConfigDict(frozen=True)

    segment_index: int = Field(..., ge=0, description="Segmento analisado")
    delay: int = Field(..., ge=1, description="Atraso estimado em amostras")
    peak: float = Field(..., description="Valor do cepstrum no atraso estimado")
    peak_strength: float = Field(..., description="z-score do pico frente aos demais atrasos da busca")
