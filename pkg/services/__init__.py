# Service layer entry point (empty on purpose)
