from pydantic import BaseModel, ConfigDict, Field, model_validator


BMP_MAGIC = b"BM"
FILE_HEADER_SIZE = 14


class BmpHeader(BaseModel):
    """Campos do cabeçalho de um BMP 24 bits, decodificados em little-endian"""
    model_config = ConfigDict(frozen=True)

    magic: bytes = Field(..., description="Assinatura, sempre 'BM'")
    file_size: int = Field(..., ge=0, le=0xFFFFFFFF, description="Tamanho total do arquivo (bytes 2-5)")
    reserved: int = Field(..., ge=0, le=0xFFFFFFFF, description="Campo reservado (bytes 6-9), guarda o tamanho do payload")
    data_offset: int = Field(..., ge=0, le=0xFFFFFFFF, description="Início da região de pixels (bytes 10-13)")
    info_size: int = Field(..., ge=0, le=0xFFFFFFFF, description="Tamanho do info header (bytes 14-17)")
    width: int = Field(..., description="Largura em pixels")
    height: int = Field(..., description="Altura em pixels (positiva = bottom-up)")
    planes: int = Field(..., ge=0, le=0xFFFF, description="Número de planos")
    bits_per_pixel: int = Field(..., ge=0, le=0xFFFF, description="Bits por pixel")
    compression: int = Field(default=0, ge=0, le=0xFFFFFFFF, description="Tipo de compressão (bytes 30-33)")
    raw_header_bytes: bytes = Field(..., description="Bytes verbatim de 0 até data_offset-1")

    @model_validator(mode="after")
    def check_invariants(self):
        if self.magic != BMP_MAGIC:
            raise ValueError(f"Assinatura inválida: {self.magic!r}")
        if self.bits_per_pixel != 24:
            raise ValueError(f"bits_per_pixel deve ser 24, recebido {self.bits_per_pixel}")
        if self.planes != 1:
            raise ValueError(f"planes deve ser 1, recebido {self.planes}")
        if self.data_offset < FILE_HEADER_SIZE + self.info_size:
            raise ValueError("data_offset sobrepõe o info header")
        if len(self.raw_header_bytes) != self.data_offset:
            raise ValueError("raw_header_bytes deve ter exatamente data_offset bytes")
        return self


class BmpImage(BaseModel):
    """BMP 24 bits: cabeçalho + região de pixels tratada como bytes opacos"""
    model_config = ConfigDict(frozen=True)

    header: BmpHeader = Field(..., description="Cabeçalho decodificado")
    carrier: bytes = Field(..., description="Região [data_offset, file_size), padding de linha incluído")

    @model_validator(mode="after")
    def check_carrier_length(self):
        expected = self.header.file_size - self.header.data_offset
        if len(self.carrier) != expected:
            raise ValueError(f"carrier deve ter {expected} bytes, recebido {len(self.carrier)}")
        return self
