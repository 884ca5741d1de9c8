# catbench/config.py

import os
from typing import List

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


class Settings(BaseModel):
    size_cap: int = Field(1_000_000, gt=0, description="Largest enumeration any operation may perform")
    extra_object: str = Field("__E", min_length=1, description="Name of the virtual object added by extensions")
    virtual_prefix: str = Field("__v:", min_length=1, description="Prefix of virtual arrow names")
    database_url: str = "sqlite:///./catbench.db"
    log_level: str = "INFO"
    cors_origins: List[str] = Field(default_factory=lambda: ["http://localhost:5173"])


def load_settings() -> Settings:
    origins = os.getenv("CATBENCH_CORS_ORIGINS")
    return Settings(
        size_cap=int(os.getenv("CATBENCH_SIZE_CAP", "1000000")),
        extra_object=os.getenv("CATBENCH_EXTRA_OBJECT", "__E"),
        virtual_prefix=os.getenv("CATBENCH_VIRTUAL_PREFIX", "__v:"),
        database_url=os.getenv("CATBENCH_DATABASE_URL", "sqlite:///./catbench.db"),
        log_level=os.getenv("CATBENCH_LOG_LEVEL", "INFO").upper(),
        cors_origins=[o.strip() for o in origins.split(",") if o.strip()]
        if origins
        else ["http://localhost:5173"],
    )


settings = load_settings()
