from pathlib import Path
from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class CliConfig(BaseModel):
    """Configuração efetiva de uma execução da CLI"""
    model_config = ConfigDict(frozen=True)

    subcommand: str = Field(..., min_length=1, description="Subcomando executado")
    paths: Dict[str, str] = Field(default_factory=dict, description="Caminhos recebidos por flag")
    output_dir: Path = Field(default=Path("."), description="Diretório de saída padrão")
    verbosity: int = Field(default=0, ge=0, description="Quantidade de -v recebidos")

    @field_validator("paths")
    @classmethod
    def validate_paths(cls, v: Dict[str, str]) -> Dict[str, str]:
        """Todo caminho informado deve ser sintaticamente não vazio"""
        for flag, value in v.items():
            if not value or not value.strip():
                raise ValueError(f"Caminho vazio em --{flag}")
        return v


class ActionSummary(BaseModel):
    """Linha de resumo em JSON impressa no stdout ao fim de cada ação"""
    model_config = ConfigDict(extra="allow", ser_json_inf_nan="constants")

    action: str = Field(..., description="Subcomando executado")
    status: str = Field(default="ok", description="ok ou error")
    output: Optional[str] = Field(default=None, description="Arquivo gerado, se houver")
