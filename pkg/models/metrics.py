import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .value_range import ValueRange


class DistortionReport(BaseModel):
    """Distorção entre cover e estego"""
    model_config = ConfigDict(frozen=True, use_enum_values=True, ser_json_inf_nan="constants")

    mse: float = Field(..., ge=0, description="Erro quadrático médio")
    psnr_db: float = Field(..., description="PSNR em dB; math.inf quando idênticos")
    max_abs_diff: int = Field(..., ge=0, description="Maior diferença absoluta")
    changed_byte_count: int = Field(..., ge=0, description="Posições diferentes")
    peak: ValueRange = Field(default=ValueRange.BYTE, description="Pico usado no PSNR")

    @model_validator(mode="after")
    def check_identity_consistency(self):
        identical = self.changed_byte_count == 0
        if (self.mse == 0) != identical or math.isinf(self.psnr_db) != identical:
            raise ValueError("mse == 0, psnr infinito e changed_byte_count == 0 devem coincidir")
        return self
