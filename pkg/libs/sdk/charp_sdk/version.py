# Part of every report and every cache key; bump when any computed value may change.
ENGINE_VERSION = "0.1.0"
