# catbench/main.py

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
import logging
import uvicorn

from . import __version__
from .config import settings
from .database import Base, engine
from .routers import compute, documents

logging.basicConfig(level=settings.log_level)

# 1. Create tables
Base.metadata.create_all(bind=engine)

# 2. Create FastAPI app
app = FastAPI(
    title="catbench",
    description="Store finite categories, functors and diagrams, and compute with them.",
    version=__version__,
    redirect_slashes=False,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# 3. Include Routers
app.include_router(documents.router)
app.include_router(compute.router)

if __name__ == "__main__":
    uvicorn.run("catbench.main:app", host="0.0.0.0", port=8000, reload=True)
