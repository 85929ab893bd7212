from .dataset_io import (
    ensure_directory,
    read_dataset_csv,
    covariate_names,
    write_json,
    write_jsonl,
    write_frame_csv,
)
__all__ = ['ensure_directory', 'read_dataset_csv', 'covariate_names', 'write_json', 'write_jsonl', 'write_frame_csv']
