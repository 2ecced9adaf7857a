"""Layered skeleton, layer decoders and layered windows."""
