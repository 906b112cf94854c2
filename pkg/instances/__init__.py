from .generators import (
    INSTANCE_KINDS,
    WeightedSetCoverSpec,
    extract_cover,
    from_set_cover,
    random_instance,
)
from .serialization import (
    FILE_SUFFIX,
    FORMAT_VERSION,
    InstanceDocument,
    instance_to_json,
    load_instance,
    read_instance,
    save_instance,
    write_instance,
)

__all__ = [
    "FILE_SUFFIX",
    "FORMAT_VERSION",
    "INSTANCE_KINDS",
    "InstanceDocument",
    "WeightedSetCoverSpec",
    "extract_cover",
    "from_set_cover",
    "instance_to_json",
    "load_instance",
    "random_instance",
    "read_instance",
    "save_instance",
    "write_instance",
]
