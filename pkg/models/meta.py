from pydantic import BaseModel
from typing import List


class MetaInfo(BaseModel):
    version: str
    build_time: str
    container_version: int
    schemes: List[str] = []
    feature_flags: List[str] = []
