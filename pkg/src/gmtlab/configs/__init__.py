from gmtlab.configs.experiment import (
    ExperimentConfig,
    available_presets,
    preset_path,
    read_config_values,
)

__all__ = ["ExperimentConfig", "available_presets", "preset_path", "read_config_values"]
