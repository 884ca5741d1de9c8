# catbench/routers/__init__.py

from fastapi import HTTPException

from ..errors import CatbenchError, SizeExceeded, UnknownCommand


def http_error(e: CatbenchError) -> HTTPException:
    """Translate a workbench error into the HTTP status the API documents."""
    if isinstance(e, SizeExceeded):
        return HTTPException(status_code=413, detail=e.render())
    if isinstance(e, UnknownCommand):
        return HTTPException(status_code=404, detail=e.render())
    return HTTPException(status_code=422, detail=e.render())
