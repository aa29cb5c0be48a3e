# Data model package
